#pragma once

#include <optional>

#include "stratakit/filtration.hpp"

namespace stratakit {

// A filtration stratum: apartment point, depth r >= 0, and a representative
// that is a single graded component of degree exactly -r at the point (zero
// representatives are only allowed at depth 0).
class Stratum {
public:
  static Stratum make(GroupPtr group, ApartmentPoint point, Rational depth,
                      LaurentMatrix rep);

  const GroupData& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  const ApartmentPoint& point() const { return point_; }
  const Rational& depth() const { return depth_; }
  const LaurentMatrix& rep() const { return rep_; }

private:
  Stratum() = default;
  GroupPtr group_;
  ApartmentPoint point_;
  Rational depth_;
  LaurentMatrix rep_;
};

// Degree -depth_at graded piece of A - x at x, packaged as a stratum.
Stratum leading_representative(const ConnectionMatrix& a, const ApartmentPoint& x);

// Group element usable for gauge action: group membership holds and the
// inverse is exactly representable with Laurent polynomial entries.
class GaugeElement {
public:
  static GaugeElement make(GroupPtr group, LaurentMatrix g);
  static GaugeElement identity(GroupPtr group);

  const GroupData& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  const LaurentMatrix& mat() const { return g_; }
  const LaurentMatrix& inv() const { return ginv_; }
  bool is_identity() const;

  // Monomial = exactly one nonzero entry per row and column, each a monomial
  // in z. Such elements act on the apartment.
  bool is_monomial() const;

private:
  GaugeElement() = default;
  GroupPtr group_;
  LaurentMatrix g_;
  LaurentMatrix ginv_;
};

// Composition so that acting by `first` then `second` equals acting by the
// returned element.
GaugeElement compose(const GaugeElement& second, const GaugeElement& first);

// g . A = g A g^-1 - tau(g) g^-1.
ConnectionMatrix gauge_transform(const ConnectionMatrix& a, const GaugeElement& g);

// Image of an apartment point under a monomial element: the diagonal of
// g x g^-1 - tau(g) g^-1, which is again a torus pattern.
ApartmentPoint monomial_point_image(const GaugeElement& g, const ApartmentPoint& x);

// Image stratum (g.x, r, g rep g^-1) under a monomial element.
Stratum transform_stratum(const GaugeElement& g, const Stratum& s);

// Every graded piece of (A - x) - rep at x has degree > -depth.
bool contains(const ConnectionMatrix& a, const Stratum& s);

// rep^n != 0 in the defining representation (n = matrix size).
bool is_fundamental(const Stratum& s);

// Whether the strata meet as cosets after moving s1 by g; g must be the
// identity or a monomial element (capability error otherwise). Strata of
// different depths are never associates.
bool associates_at(const GaugeElement& g, const Stratum& s1, const Stratum& s2);
bool associates_at(const Stratum& s1, const Stratum& s2);  // identity g

// Stratum of the pullback under z = u^e: point and depth scale by e, the
// representative maps by z -> u^e and scales by e.
Stratum pullback_stratum(const Stratum& s, int e);

}  // namespace stratakit
