#pragma once

#include <vector>

#include "stratakit/apartment.hpp"

namespace stratakit {

// One homogeneous piece of a matrix under the grading attached to an
// apartment point: a root component c z^m X_alpha has degree alpha(x) + m, a
// torus component t z^m has degree m.
struct GradedComponent {
  Rational degree;
  LaurentMatrix part;
};

// A connection matrix A (the z d/dz coordinate of the connection) together
// with its group; membership is checked at construction.
class ConnectionMatrix {
public:
  ConnectionMatrix(GroupPtr group, LaurentMatrix a);

  const GroupData& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  const LaurentMatrix& mat() const { return mat_; }

private:
  GroupPtr group_;
  LaurentMatrix mat_;
};

// Distinct degrees, ascending; parts sum to the input.
std::vector<GradedComponent> graded_decompose(const GroupData& g,
                                              const LaurentMatrix& a,
                                              const ApartmentPoint& x);

// Degrees where the graded pieces of the ambient algebra can be nonzero:
// the integers together with alpha(x) + Z over all roots alpha, restricted
// to |value| <= bound. Sorted ascending; symmetric about zero.
struct CriticalSet {
  std::vector<Rational> values;
  Rational bound;
};
CriticalSet critical_numbers(const GroupData& g, const ApartmentPoint& x,
                             const Rational& bound);

// max(0, -min degree) of the graded pieces of A - x, the leading filtration
// depth of the connection at the point.
Rational depth_at(const ConnectionMatrix& a, const ApartmentPoint& x);

}  // namespace stratakit
