#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stratakit/slope_engine.hpp"

namespace stratakit {

using Json = nlohmann::json;

// Rationals travel as reduced "p/q" strings (or bare integers on input).
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& path);

Json point_to_json(const ApartmentPoint& x);
ApartmentPoint point_from_json(const Json& j, const std::string& path);

// A Laurent matrix is a list of layers {power, matrix}, one per z-power with
// a nonzero coefficient matrix; entries are rational strings.
Json matrix_to_json(const LaurentMatrix& m);
LaurentMatrix matrix_from_json(const Json& j, int rows, int cols,
                               const std::string& path);

Json stratum_to_json(const Stratum& s);

// One parsed job: the input document plus command parameters. The command
// itself and any flag overrides are filled in by the caller.
struct JobSpec {
  std::string command;
  GroupPtr group;
  std::optional<ConnectionMatrix> connection;
  std::vector<Stratum> strata;

  std::uint64_t seed = 0x51ab5eedULL;
  std::optional<ApartmentPoint> point;
  std::optional<Rational> depth;
  std::optional<long> horizon;
  int cover_degree = 1;
  int grid_denom = 8;
};

// Input document schema:
//   {
//     "group": {"kind": "GL"|"SL"|"Sp", "n": <matrix size>},
//     "connection": [{"power": -1, "matrix": [["0","1"],["1","0"]]}, ...],
//     "strata": [{"point": [...], "depth": "p/q", "rep": [layers]}, ...],
//     "point": [...], "depth": "p/q", "e": 2, "horizon": 12,
//     "seed": 123, "grid_denom": 8
//   }
// group is required; everything else is optional. Unknown keys are rejected.
JobSpec parse_input(const std::string& text);

Json input_to_json(const JobSpec& spec);
std::string render_input(const JobSpec& spec, int indent = 2);

}  // namespace stratakit
