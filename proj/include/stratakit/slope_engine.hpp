#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "stratakit/katz.hpp"
#include "stratakit/stratum.hpp"

namespace stratakit {

// Matrix of the adjoint action of the connection on the Lie algebra, in the
// coordinate basis: torus basis elements first, then root vectors (positives
// before negatives, in group order).
LaurentMatrix adjoint_matrix(const ConnectionMatrix& a);

// Slopes contributed by abelianized characters: for GL the determinant
// character max(0, -v(trace)); empty for SL and Sp.
std::vector<Rational> character_slopes(const ConnectionMatrix& a);

// Depth evaluations plus the outcome of the certified stratum search.
struct SearchResult {
  std::optional<Stratum> stratum;
  std::optional<GaugeElement> gauge;  // witness trivialization when not identity
  std::vector<std::pair<ApartmentPoint, Rational>> depth_map;  // initial pass
  std::vector<std::string> diagnostics;
  int iterations = 0;
};

// Looks for a stratum of the target depth: evaluates the depth at every
// optimal point (Phase 1), then applies constant/monomial reduction moves at
// stalled minimizers (Phase 2), and otherwise reports absence with
// diagnostics (Phase 3). A returned stratum s with gauge g certifies
// contains(gauge_transform(a, g), s); gauge is absent when g is the identity
// and then contains(a, s) holds directly.
SearchResult stratum_search(const ConnectionMatrix& a, const Rational& target,
                            std::uint64_t seed = 0x51ab5eedULL);

struct MethodValue {
  std::string method;
  std::string value;
};

struct SlopeReport {
  Rational slope;
  bool regular_singular = false;
  std::optional<Stratum> stratum;
  std::optional<GaugeElement> gauge;
  std::vector<std::pair<ApartmentPoint, Rational>> depth_map;
  std::vector<MethodValue> methods;
  std::vector<std::string> diagnostics;
};

// Certified slope value alone: Katz/Newton oracle on the adjoint system
// combined with character slopes, cross-checked for GL against the defining
// representation. No stratum search.
Rational certified_slope(const ConnectionMatrix& a, std::uint64_t seed = 0x51ab5eedULL);

// Certified slope plus a stratum search at the certified value.
SlopeReport slope(const ConnectionMatrix& a, std::uint64_t seed = 0x51ab5eedULL);

bool is_regular_singular(const ConnectionMatrix& a, std::uint64_t seed = 0x51ab5eedULL);

// Depth-zero strata: replace a nonfundamental stratum at a minimal-facet
// point by a fundamental one at a nearby point x + eps * delta, after a
// constant gauge puts the representative in strictly triangular position.
struct FundamentalizeResult {
  std::optional<Stratum> stratum;
  std::optional<GaugeElement> gauge;
  std::vector<std::string> diagnostics;
};
FundamentalizeResult fundamentalize_depth_zero(const ConnectionMatrix& a,
                                               const Stratum& s);

// Pullback along z = u^e: A'(u) = e * A(u^e).
ConnectionMatrix pullback_connection(const ConnectionMatrix& a, int e);

// For a connection already written over the degree-e cover: when the leading
// coefficient matrix at the pole is not nilpotent, the downstairs slope is
// (pole order)/e; disengaged otherwise.
std::optional<Rational> frenkel_gross_check(const ConnectionMatrix& a_cover, int e);

}  // namespace stratakit
