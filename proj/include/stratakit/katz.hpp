#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stratakit/laurent_matrix.hpp"

namespace stratakit {

// Largest Newton-polygon slope of the differential system z d/dz + A, an
// exact nonnegative rational. Independent of the filtration machinery: works
// through cyclic vectors and fraction-free linear algebra. The seed drives
// the (deterministic) random cyclic-vector candidates; the result does not
// depend on it.
Rational katz_newton_slope(const LaurentMatrix& a, std::uint64_t seed = 0x51ab5eedULL);

// Growth trace of the iterated operator: s_i = -min_j v((z d/dz + A)^i e_j)
// (disengaged when the i-th iterate annihilates every basis vector). The
// verdict compares max(s_i - r i) over the late half of the horizon against
// the early half; it is a finite-horizon diagnostic, not a slope oracle.
struct KatzTrace {
  Rational r;
  long horizon;
  std::vector<std::optional<long>> s;  // s[0] corresponds to i = 1
  bool bounded;
};
KatzTrace katz_boundedness_trace(const LaurentMatrix& a, const Rational& r,
                                 long horizon);

long default_trace_horizon(const LaurentMatrix& a);

}  // namespace stratakit
