#include "stratakit/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace stratakit {

Rational LaurentScalar::coefficient(int power) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), power,
                             [](const Term& t, int p) { return t.first < p; });
  if (it != t_.end() && it->first == power) return it->second;
  return Rational();
}

void LaurentScalar::prune() {
  t_.erase(std::remove_if(t_.begin(), t_.end(),
                          [](const Term& t) { return t.second.is_zero(); }),
           t_.end());
}

LaurentScalar LaurentScalar::tau() const {
  LaurentScalar r;
  r.t_.reserve(t_.size());
  for (const auto& [p, c] : t_) {
    if (p != 0) r.t_.push_back({p, c * Rational(p)});
  }
  return r;
}

LaurentScalar LaurentScalar::scale_powers(int e) const {
  if (e < 1) fail(kCapabilityError, "power substitution needs e >= 1");
  LaurentScalar r;
  r.t_.reserve(t_.size());
  for (const auto& [p, c] : t_) r.t_.push_back({p * e, c});
  return r;
}

LaurentScalar LaurentScalar::shifted(int dpower) const {
  LaurentScalar r;
  r.t_.reserve(t_.size());
  for (const auto& [p, c] : t_) r.t_.push_back({p + dpower, c});
  return r;
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r;
  r.t_.reserve(t_.size());
  for (const auto& [p, c] : t_) r.t_.push_back({p, -c});
  return r;
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  auto a = t_.begin();
  auto b = o.t_.begin();
  while (a != t_.end() && b != o.t_.end()) {
    if (a->first < b->first) {
      out.push_back(*a++);
    } else if (b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (!s.is_zero()) out.push_back({a->first, s});
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, t_.end());
  out.insert(out.end(), b, o.t_.end());
  t_ = std::move(out);
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) { return *this += -o; }

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  if (a.is_zero() || b.is_zero()) return LaurentScalar();
  if (a.is_monomial()) {
    LaurentScalar r = b.shifted(a.t_[0].first);
    for (auto& [p, c] : r.t_) c *= a.t_[0].second;
    return r;
  }
  if (b.is_monomial()) return b * a;
  LaurentBuilder acc;
  for (const auto& [pa, ca] : a.t_)
    for (const auto& [pb, cb] : b.t_) acc.add(pa + pb, ca * cb);
  return acc.build();
}

LaurentScalar LaurentScalar::divide_exact(const LaurentScalar& a, const LaurentScalar& b) {
  if (b.is_zero()) fail(kInvertibilityError, "exact division by the zero Laurent polynomial");
  if (a.is_zero()) return LaurentScalar();
  if (b.is_monomial()) {
    LaurentScalar r = a.shifted(-b.t_[0].first);
    for (auto& [p, c] : r.t_) c /= b.t_[0].second;
    return r;
  }
  const int vb = *b.valuation();
  const int tb = *b.top_power();
  const int top_q = *a.top_power() - tb;
  LaurentScalar rem = a;
  LaurentScalar q;
  while (!rem.is_zero()) {
    const int d = *rem.valuation() - vb;
    if (d > top_q)
      fail(kInvertibilityError,
           "inexact Laurent division: (" + a.str() + ") / (" + b.str() + ")");
    const Rational c = rem.t_.front().second / b.t_.front().second;
    LaurentScalar t = monomial(d, c);
    q += t;
    rem -= t * b;
  }
  return q;
}

LaurentScalar LaurentBuilder::build() {
  std::sort(acc_.begin(), acc_.end(),
            [](const LaurentScalar::Term& x, const LaurentScalar::Term& y) {
              return x.first < y.first;
            });
  LaurentScalar r;
  for (auto& [p, c] : acc_) {
    if (!r.t_.empty() && r.t_.back().first == p) {
      r.t_.back().second += c;
      if (r.t_.back().second.is_zero()) r.t_.pop_back();
    } else if (!c.is_zero()) {
      r.t_.push_back({p, c});
    }
  }
  acc_.clear();
  return r;
}

std::string LaurentScalar::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : t_) {
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    if (first && c.sign() < 0) os << "-";
    first = false;
    Rational a = abs(c);
    const bool unit = (a == Rational(1));
    if (p == 0) {
      os << a.str();
    } else {
      if (!unit) os << a.str() << " ";
      os << "z";
      if (p != 1) os << "^" << p;
    }
  }
  return os.str();
}

}  // namespace stratakit
