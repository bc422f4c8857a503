#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "stratakit/error.hpp"

namespace stratakit {

// Exact rational number. Stored in lowest terms with positive denominator.
// No floating point anywhere; serialization is the exact string "p/q"
// (denominator omitted when 1).
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // implicit so integer literals act as scalars
  Rational(long num, long den) {
    if (den == 0) fail(kParseError, "rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  static Rational from_string(std::string_view s);

  std::string str() const { return v_.get_str(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  // Value as long; only valid for integers that fit, which callers check via
  // is_integer() plus fits_long().
  bool fits_long() const {
    return v_.get_den() == 1 && v_.get_num().fits_slong_p();
  }
  long to_long() const {
    if (!fits_long()) fail(kInternalError, "rational does not fit a long: " + str());
    return v_.get_num().get_si();
  }

  Rational floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(mpq_class(q));
  }
  Rational ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(mpq_class(q));
  }
  // Fractional part in [0,1).
  Rational frac() const { return *this - floor(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) fail(kInvertibilityError, "division of rationals by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
  mpq_class v_;
};

inline Rational Rational::from_string(std::string_view s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string_view::npos)
    fail(kParseError, "empty string where a rational was expected");
  std::string t(s.substr(b, e - b + 1));

  auto valid = [](const std::string& u) {
    if (u.empty()) return false;
    size_t i = (u[0] == '-' || u[0] == '+') ? 1 : 0;
    if (i == u.size()) return false;
    bool slash_seen = false;
    for (; i < u.size(); ++i) {
      if (u[i] == '/') {
        if (slash_seen || i + 1 == u.size()) return false;
        slash_seen = true;
      } else if (u[i] < '0' || u[i] > '9') {
        return false;
      }
    }
    return true;
  };
  if (!valid(t)) fail(kParseError, "malformed rational: '" + t + "'");

  mpq_class v;
  if (v.set_str(t, 10) != 0) fail(kParseError, "malformed rational: '" + t + "'");
  if (v.get_den() == 0) fail(kParseError, "rational with zero denominator: '" + t + "'");
  v.canonicalize();
  return Rational(v);
}

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace stratakit
