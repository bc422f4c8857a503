#pragma once

#include <vector>

#include "stratakit/group.hpp"
#include "stratakit/rational.hpp"

namespace stratakit {

// Point of the standard apartment, in torus coordinates (length = rank; SL
// points must have coordinates summing to zero).
struct ApartmentPoint {
  std::vector<Rational> coords;

  friend bool operator==(const ApartmentPoint& a, const ApartmentPoint& b) {
    return a.coords == b.coords;
  }
  // Lexicographic coordinate order, used for deterministic point enumeration.
  friend bool operator<(const ApartmentPoint& a, const ApartmentPoint& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(),
                                        b.coords.begin(), b.coords.end());
  }
};

void validate_point(const GroupData& g, const ApartmentPoint& x);
ApartmentPoint origin_point(const GroupData& g);
bool is_origin(const ApartmentPoint& x);
std::string point_str(const ApartmentPoint& x);

// Constant diagonal matrix realizing the point in the defining representation.
LaurentMatrix embed_point(const GroupData& g, const ApartmentPoint& x);

// Value of root idx at the point.
Rational eval_root(const GroupData& g, int idx, const ApartmentPoint& x);

// Affine functional psi(x) = lin . x + cst on the apartment.
struct AffineFunctional {
  std::vector<Rational> lin;
  Rational cst;

  Rational eval(const ApartmentPoint& x) const;
};

// The functionals cutting out the fundamental alcove: the simple roots plus
// 1 - (highest root). Empty when the group has no roots.
std::vector<AffineFunctional> affine_minimal_roots(const GroupData& g);

// Vertices of the closed fundamental alcove, sorted lexicographically.
std::vector<ApartmentPoint> alcove_vertices(const GroupData& g);

bool in_closed_alcove(const GroupData& g, const ApartmentPoint& x);

// Candidate minimizer set: for every nonempty subset of the alcove walls,
// the lexicographically smallest maximizer of the minimum wall value, plus
// all alcove vertices. Sorted lexicographically, deduplicated.
std::vector<ApartmentPoint> optimal_points(const GroupData& g);

// Alcove points whose coordinates are multiples of 1/denom, sorted
// lexicographically (does not include non-grid optimal points).
std::vector<ApartmentPoint> alcove_grid(const GroupData& g, int denom);

}  // namespace stratakit
