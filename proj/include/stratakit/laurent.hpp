#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stratakit/rational.hpp"

namespace stratakit {

// Laurent polynomial in z over the rationals: a finite sum of c * z^k with
// k possibly negative. Terms are kept sorted by power with no zero
// coefficients, so equality is structural.
class LaurentScalar {
public:
  using Term = std::pair<int, Rational>;

  LaurentScalar() = default;
  LaurentScalar(const Rational& c) {  // implicit: constants act as scalars
    if (!c.is_zero()) t_.push_back({0, c});
  }
  LaurentScalar(long c) : LaurentScalar(Rational(c)) {}

  static LaurentScalar monomial(int power, const Rational& coeff) {
    LaurentScalar r;
    if (!coeff.is_zero()) r.t_.push_back({power, coeff});
    return r;
  }
  static LaurentScalar variable() { return monomial(1, 1); }

  bool is_zero() const { return t_.empty(); }
  // Lowest power; disengaged for the zero element (valuation +infinity).
  std::optional<int> valuation() const {
    if (t_.empty()) return std::nullopt;
    return t_.front().first;
  }
  std::optional<int> top_power() const {
    if (t_.empty()) return std::nullopt;
    return t_.back().first;
  }
  Rational coefficient(int power) const;
  const std::vector<Term>& terms() const { return t_; }
  int term_count() const { return static_cast<int>(t_.size()); }

  bool is_monomial() const { return t_.size() == 1; }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }

  // The derivation z d/dz: sends c z^k to k c z^k.
  LaurentScalar tau() const;
  // Substitution z -> z^e for e >= 1.
  LaurentScalar scale_powers(int e) const;
  LaurentScalar shifted(int dpower) const;  // multiply by z^dpower

  LaurentScalar operator-() const;
  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
  LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) { return a.t_ == b.t_; }
  friend bool operator!=(const LaurentScalar& a, const LaurentScalar& b) { return !(a == b); }

  // Exact quotient a/b; raises an invertibility error when b is zero or does
  // not divide a in the Laurent polynomial ring.
  static LaurentScalar divide_exact(const LaurentScalar& a, const LaurentScalar& b);

  std::string str() const;

private:
  std::vector<Term> t_;
  void prune();  // drop zero coefficients, keep sort order
  friend class LaurentBuilder;
};

// Accumulates terms out of order, then assembles a normalized scalar.
class LaurentBuilder {
public:
  void add(int power, const Rational& coeff) {
    if (!coeff.is_zero()) acc_.push_back({power, coeff});
  }
  LaurentScalar build();

private:
  std::vector<LaurentScalar::Term> acc_;
};

}  // namespace stratakit
