#include "stratakit/stratum.hpp"

#include <algorithm>

namespace stratakit {

Stratum Stratum::make(GroupPtr group, ApartmentPoint point, Rational depth,
                      LaurentMatrix rep) {
  if (!group) fail(kInternalError, "stratum without a group");
  validate_point(*group, point);
  if (depth.sign() < 0) fail(kMembershipError, "stratum depth must be nonnegative");
  group->check_lie_membership(rep);
  auto comps = graded_decompose(*group, rep, point);
  if (comps.size() > 1)
    fail(kMembershipError,
         "stratum representative is not homogeneous at the point (degrees " +
             comps.front().degree.str() + " .. " + comps.back().degree.str() + ")");
  if (comps.size() == 1 && comps.front().degree != -depth)
    fail(kMembershipError, "stratum representative has degree " +
                               comps.front().degree.str() + ", expected " +
                               (-depth).str());
  if (comps.empty() && depth.sign() != 0)
    fail(kMembershipError, "zero representative requires depth zero");
  Stratum s;
  s.group_ = std::move(group);
  s.point_ = std::move(point);
  s.depth_ = std::move(depth);
  s.rep_ = std::move(rep);
  return s;
}

Stratum leading_representative(const ConnectionMatrix& a, const ApartmentPoint& x) {
  const GroupData& g = a.group();
  LaurentMatrix b = a.mat() - embed_point(g, x);
  auto comps = graded_decompose(g, b, x);
  if (comps.empty())
    return Stratum::make(a.group_ptr(), x, Rational(0), LaurentMatrix(g.size, g.size));
  const Rational d = max(Rational(0), -comps.front().degree);
  LaurentMatrix rep(g.size, g.size);
  for (const auto& c : comps)
    if (c.degree == -d) rep = c.part;
  return Stratum::make(a.group_ptr(), x, d, std::move(rep));
}

GaugeElement GaugeElement::make(GroupPtr group, LaurentMatrix g) {
  if (!group) fail(kInternalError, "gauge element without a group");
  group->check_group_membership(g);
  auto inv = invert_exact(g);
  if (!inv)
    fail(kInvertibilityError,
         "gauge element has no exact Laurent polynomial inverse");
  GaugeElement e;
  e.group_ = std::move(group);
  e.g_ = std::move(g);
  e.ginv_ = std::move(*inv);
  if (!(e.g_ * e.ginv_ == LaurentMatrix::identity(e.g_.rows())))
    fail(kInternalError, "gauge inverse verification failed");
  return e;
}

GaugeElement GaugeElement::identity(GroupPtr group) {
  if (!group) fail(kInternalError, "gauge element without a group");
  const int n = group->size;
  return make(std::move(group), LaurentMatrix::identity(n));
}

bool GaugeElement::is_identity() const {
  return g_ == LaurentMatrix::identity(g_.rows());
}

bool GaugeElement::is_monomial() const {
  const int n = g_.rows();
  std::vector<int> col_used(n, 0);
  for (int i = 0; i < n; ++i) {
    int nz = -1;
    for (int j = 0; j < n; ++j) {
      if (g_.at(i, j).is_zero()) continue;
      if (nz >= 0 || !g_.at(i, j).is_monomial()) return false;
      nz = j;
    }
    if (nz < 0) return false;
    if (col_used[nz]++) return false;
  }
  return true;
}

GaugeElement compose(const GaugeElement& second, const GaugeElement& first) {
  return GaugeElement::make(second.group_ptr(), second.mat() * first.mat());
}

ConnectionMatrix gauge_transform(const ConnectionMatrix& a, const GaugeElement& g) {
  if (a.group().kind != g.group().kind || a.group().size != g.group().size)
    fail(kDimensionError, "gauge element and connection have different groups");
  LaurentMatrix res = g.mat() * a.mat() * g.inv() - g.mat().tau() * g.inv();
  return ConnectionMatrix(a.group_ptr(), std::move(res));
}

ApartmentPoint monomial_point_image(const GaugeElement& g, const ApartmentPoint& x) {
  const GroupData& gd = g.group();
  if (!g.is_monomial())
    fail(kCapabilityError, "only monomial elements act on apartment points");
  validate_point(gd, x);
  LaurentMatrix m =
      g.mat() * embed_point(gd, x) * g.inv() - g.mat().tau() * g.inv();
  // For a monomial element the result is a constant diagonal torus pattern.
  std::vector<Rational> coords(gd.rank);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const LaurentScalar& e = m.at(i, j);
      if (i != j) {
        if (!e.is_zero())
          fail(kInternalError, "monomial point image is not diagonal");
        continue;
      }
      if (!e.is_constant())
        fail(kInternalError, "monomial point image has nonconstant diagonal");
    }
  for (int i = 0; i < gd.rank; ++i) coords[i] = m.at(i, i).coefficient(0);
  if (gd.kind == GroupKind::Sp) {
    for (int i = 0; i < gd.rank; ++i)
      if (!(m.at(gd.rank + i, gd.rank + i).coefficient(0) == -coords[i]))
        fail(kInternalError, "monomial point image is not a symplectic torus pattern");
  }
  ApartmentPoint y{std::move(coords)};
  validate_point(gd, y);
  return y;
}

Stratum transform_stratum(const GaugeElement& g, const Stratum& s) {
  ApartmentPoint y = monomial_point_image(g, s.point());
  LaurentMatrix rep = g.mat() * s.rep() * g.inv();
  return Stratum::make(s.group_ptr(), std::move(y), s.depth(), std::move(rep));
}

bool contains(const ConnectionMatrix& a, const Stratum& s) {
  const GroupData& g = a.group();
  if (g.size != s.group().size || g.kind != s.group().kind)
    fail(kDimensionError, "stratum and connection have different groups");
  LaurentMatrix b = a.mat() - embed_point(g, s.point()) - s.rep();
  for (const auto& c : graded_decompose(g, b, s.point()))
    if (!(c.degree > -s.depth())) return false;
  return true;
}

bool is_fundamental(const Stratum& s) {
  return !s.rep().pow(s.group().size).is_zero();
}

bool associates_at(const GaugeElement& g, const Stratum& s1, const Stratum& s2) {
  if (s1.group().kind != s2.group().kind || s1.group().size != s2.group().size)
    fail(kDimensionError, "strata live in different groups");
  if (!(g.is_identity() || g.is_monomial()))
    fail(kCapabilityError,
         "associate checks support only identity or monomial elements");
  const Stratum m1 = g.is_identity() ? s1 : transform_stratum(g, s1);
  if (m1.depth() != s2.depth()) return false;
  const GroupData& gd = s2.group();
  const Rational r = s2.depth();
  // Coset intersection test, componentwise: each bidegree piece of the
  // difference (including the torus displacement between the points) must be
  // negligible at one of the two points.
  LaurentMatrix diff = m1.rep() - s2.rep() + embed_point(gd, m1.point()) -
                       embed_point(gd, s2.point());
  RootDecomposition d = root_decompose(gd, diff);
  for (int i = 0; i < gd.rank; ++i) {
    for (const auto& [m, c] : d.torus[i].terms()) {
      if (!(Rational(m) > -r)) return false;
    }
  }
  for (int k = 0; k < gd.root_count(); ++k) {
    if (d.root_coeff[k].is_zero()) continue;
    const Rational a1 = eval_root(gd, k, m1.point());
    const Rational a2 = eval_root(gd, k, s2.point());
    for (const auto& [m, c] : d.root_coeff[k].terms()) {
      const bool ok1 = a1 + Rational(m) > -r;
      const bool ok2 = a2 + Rational(m) > -r;
      if (!ok1 && !ok2) return false;
    }
  }
  return true;
}

bool associates_at(const Stratum& s1, const Stratum& s2) {
  return associates_at(GaugeElement::identity(s1.group_ptr()), s1, s2);
}

Stratum pullback_stratum(const Stratum& s, int e) {
  if (e < 1) fail(kParseError, "pullback degree must be at least 1");
  std::vector<Rational> coords;
  coords.reserve(s.point().coords.size());
  for (const auto& c : s.point().coords) coords.push_back(Rational(e) * c);
  LaurentMatrix rep = LaurentScalar(Rational(e)) * s.rep().scale_powers(e);
  return Stratum::make(s.group_ptr(), ApartmentPoint{std::move(coords)},
                       Rational(e) * s.depth(), std::move(rep));
}

}  // namespace stratakit
