#include "stratakit/jobspec.hpp"

#include <set>

#include "stratakit/error.hpp"

namespace stratakit {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  fail(kParseError, path + ": " + msg);
}

void require_keys(const Json& j, const std::string& path,
                  const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      bad(path, "unknown key \"" + item.key() + "\"");
  }
}

long integer_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

}  // namespace

Json rational_to_json(const Rational& r) { return Json(r.str()); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(path, "expected a rational string \"p/q\" or an integer");
  try {
    return Rational::from_string(j.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Json point_to_json(const ApartmentPoint& x) {
  Json out = Json::array();
  for (const Rational& c : x.coords) out.push_back(rational_to_json(c));
  return out;
}

ApartmentPoint point_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of rational coordinates");
  ApartmentPoint x;
  for (size_t i = 0; i < j.size(); ++i)
    x.coords.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return x;
}

Json matrix_to_json(const LaurentMatrix& m) {
  Json out = Json::array();
  auto v = m.valuation();
  if (!v) return out;
  int top = *v;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (auto t = m.at(i, j).top_power()) top = std::max(top, *t);
  for (int p = *v; p <= top; ++p) {
    LaurentMatrix c = m.coefficient_matrix(p);
    if (c.is_zero()) continue;
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < m.cols(); ++j)
        row.push_back(c.at(i, j).coefficient(0).str());
      rows.push_back(std::move(row));
    }
    out.push_back(Json{{"power", p}, {"matrix", std::move(rows)}});
  }
  return out;
}

LaurentMatrix matrix_from_json(const Json& j, int rows, int cols,
                               const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of {power, matrix} layers");
  LaurentMatrix m(rows, cols);
  std::set<long> seen;
  for (size_t k = 0; k < j.size(); ++k) {
    const std::string lp = path + "[" + std::to_string(k) + "]";
    const Json& layer = j[k];
    if (!layer.is_object()) bad(lp, "expected an object {power, matrix}");
    require_keys(layer, lp, {"power", "matrix"});
    if (!layer.contains("power")) bad(lp, "missing \"power\"");
    if (!layer.contains("matrix")) bad(lp, "missing \"matrix\"");
    long power = integer_from_json(layer["power"], lp + ".power");
    if (!seen.insert(power).second)
      bad(lp + ".power", "duplicate power " + std::to_string(power));
    const Json& rowsj = layer["matrix"];
    if (!rowsj.is_array() || static_cast<int>(rowsj.size()) != rows)
      bad(lp + ".matrix", "expected " + std::to_string(rows) + " rows");
    for (int i = 0; i < rows; ++i) {
      const Json& rowj = rowsj[static_cast<size_t>(i)];
      const std::string rp = lp + ".matrix[" + std::to_string(i) + "]";
      if (!rowj.is_array() || static_cast<int>(rowj.size()) != cols)
        bad(rp, "expected " + std::to_string(cols) + " entries");
      for (int c = 0; c < cols; ++c) {
        Rational v = rational_from_json(rowj[static_cast<size_t>(c)],
                                        rp + "[" + std::to_string(c) + "]");
        if (!v.is_zero())
          m.at(i, c) += LaurentScalar::monomial(static_cast<int>(power), v);
      }
    }
  }
  return m;
}

Json stratum_to_json(const Stratum& s) {
  return Json{{"point", point_to_json(s.point())},
              {"depth", rational_to_json(s.depth())},
              {"rep", matrix_to_json(s.rep())}};
}

JobSpec parse_input(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(kParseError, std::string("input is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(kParseError, "input: expected a JSON object");
  require_keys(j, "input",
               {"group", "connection", "strata", "point", "depth", "e",
                "horizon", "seed", "grid_denom"});

  JobSpec spec;

  if (!j.contains("group")) fail(kParseError, "input: missing \"group\"");
  const Json& gj = j["group"];
  if (!gj.is_object()) bad("group", "expected an object {kind, n}");
  require_keys(gj, "group", {"kind", "n"});
  if (!gj.contains("kind")) bad("group", "missing \"kind\"");
  if (!gj.contains("n")) bad("group", "missing \"n\"");
  if (!gj["kind"].is_string()) bad("group.kind", "expected \"GL\", \"SL\" or \"Sp\"");
  GroupKind kind;
  try {
    kind = kind_from_name(gj["kind"].get<std::string>());
  } catch (const Error& e) {
    bad("group.kind", e.what());
  }
  long n = integer_from_json(gj["n"], "group.n");
  if (n < 1 || n > 64) bad("group.n", "matrix size must be in [1, 64]");
  try {
    spec.group = GroupData::build(kind, static_cast<int>(n));
  } catch (const Error& e) {
    bad("group", e.what());
  }
  const int size = spec.group->size;

  if (j.contains("connection")) {
    LaurentMatrix a = matrix_from_json(j["connection"], size, size, "connection");
    try {
      spec.connection.emplace(spec.group, std::move(a));
    } catch (const Error& e) {
      fail(e.code(), std::string("connection: ") + e.what());
    }
  }

  if (j.contains("strata")) {
    const Json& sj = j["strata"];
    if (!sj.is_array()) bad("strata", "expected an array of strata");
    for (size_t k = 0; k < sj.size(); ++k) {
      const std::string sp = "strata[" + std::to_string(k) + "]";
      const Json& one = sj[k];
      if (!one.is_object()) bad(sp, "expected an object {point, depth, rep}");
      require_keys(one, sp, {"point", "depth", "rep"});
      if (!one.contains("point")) bad(sp, "missing \"point\"");
      if (!one.contains("depth")) bad(sp, "missing \"depth\"");
      ApartmentPoint x = point_from_json(one["point"], sp + ".point");
      Rational depth = rational_from_json(one["depth"], sp + ".depth");
      LaurentMatrix rep(size, size);
      if (one.contains("rep"))
        rep = matrix_from_json(one["rep"], size, size, sp + ".rep");
      try {
        spec.strata.push_back(Stratum::make(spec.group, std::move(x), depth,
                                            std::move(rep)));
      } catch (const Error& e) {
        fail(e.code(), sp + ": " + e.what());
      }
    }
  }

  if (j.contains("point")) {
    ApartmentPoint x = point_from_json(j["point"], "point");
    try {
      validate_point(*spec.group, x);
    } catch (const Error& e) {
      bad("point", e.what());
    }
    spec.point = std::move(x);
  }
  if (j.contains("depth")) spec.depth = rational_from_json(j["depth"], "depth");
  if (j.contains("e")) {
    long e = integer_from_json(j["e"], "e");
    if (e < 1) bad("e", "cover degree must be a positive integer");
    spec.cover_degree = static_cast<int>(e);
  }
  if (j.contains("horizon")) {
    long h = integer_from_json(j["horizon"], "horizon");
    if (h < 1) bad("horizon", "horizon must be a positive integer");
    spec.horizon = h;
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      bad("seed", "expected an integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("grid_denom")) {
    long d = integer_from_json(j["grid_denom"], "grid_denom");
    if (d < 0 || d > 24)
      bad("grid_denom", "grid denominator must be in [0, 24] (0 disables the grid)");
    spec.grid_denom = static_cast<int>(d);
  }
  return spec;
}

Json input_to_json(const JobSpec& spec) {
  Json j = Json::object();
  j["group"] = Json{{"kind", kind_name(spec.group->kind)}, {"n", spec.group->size}};
  if (spec.connection) j["connection"] = matrix_to_json(spec.connection->mat());
  if (!spec.strata.empty()) {
    Json arr = Json::array();
    for (const Stratum& s : spec.strata) arr.push_back(stratum_to_json(s));
    j["strata"] = std::move(arr);
  }
  if (spec.point) j["point"] = point_to_json(*spec.point);
  if (spec.depth) j["depth"] = rational_to_json(*spec.depth);
  if (spec.cover_degree != 1) j["e"] = spec.cover_degree;
  if (spec.horizon) j["horizon"] = *spec.horizon;
  j["seed"] = spec.seed;
  if (spec.grid_denom != 8) j["grid_denom"] = spec.grid_denom;
  return j;
}

std::string render_input(const JobSpec& spec, int indent) {
  return input_to_json(spec).dump(indent);
}

}  // namespace stratakit
