#include "stratakit/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "stratakit/error.hpp"

namespace stratakit {

namespace {

const ConnectionMatrix& need_connection(const JobSpec& spec) {
  if (!spec.connection)
    fail(kParseError,
         "command " + spec.command + " requires a \"connection\" in the input");
  return *spec.connection;
}

int thread_cap() {
  if (const char* env = std::getenv("STRATA_KIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 1)
      return static_cast<int>(std::min<long>(v, 64));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min<unsigned>(8, std::max(1u, hw)));
}

Json depth_map_to_json(
    const std::vector<std::pair<ApartmentPoint, Rational>>& dm) {
  Json out = Json::array();
  for (const auto& [x, d] : dm)
    out.push_back(Json{{"point", point_to_json(x)}, {"depth", rational_to_json(d)}});
  return out;
}

Json diagnostics_to_json(const std::vector<std::string>& diags) {
  Json out = Json::array();
  for (const std::string& d : diags) out.push_back(d);
  return out;
}

Json slope_report_to_json(const SlopeReport& rep) {
  Json out = Json::object();
  out["slope"] = rational_to_json(rep.slope);
  out["regular_singular"] = rep.regular_singular;
  Json methods = Json::array();
  for (const MethodValue& mv : rep.methods)
    methods.push_back(Json{{"method", mv.method}, {"value", mv.value}});
  out["methods"] = std::move(methods);
  if (rep.stratum) out["stratum"] = stratum_to_json(*rep.stratum);
  if (rep.gauge) out["gauge"] = matrix_to_json(rep.gauge->mat());
  out["depth_map"] = depth_map_to_json(rep.depth_map);
  out["diagnostics"] = diagnostics_to_json(rep.diagnostics);
  return out;
}

Json run_slope(const JobSpec& spec) {
  return slope_report_to_json(slope(need_connection(spec), spec.seed));
}

Json run_stratum(const JobSpec& spec) {
  const ConnectionMatrix& a = need_connection(spec);
  Rational target =
      spec.depth ? *spec.depth : certified_slope(a, spec.seed);
  SearchResult sr = stratum_search(a, target, spec.seed);
  Json out = Json::object();
  out["target"] = rational_to_json(target);
  out["found"] = sr.stratum.has_value();
  if (sr.stratum) out["stratum"] = stratum_to_json(*sr.stratum);
  if (sr.gauge) out["gauge"] = matrix_to_json(sr.gauge->mat());
  out["iterations"] = sr.iterations;
  out["depth_map"] = depth_map_to_json(sr.depth_map);
  out["diagnostics"] = diagnostics_to_json(sr.diagnostics);
  return out;
}

Json run_depth_map(const JobSpec& spec) {
  const ConnectionMatrix& a = need_connection(spec);
  const GroupData& g = a.group();
  std::vector<ApartmentPoint> pts = optimal_points(g);
  if (spec.grid_denom > 0) {
    std::vector<ApartmentPoint> grid = alcove_grid(g, spec.grid_denom);
    pts.insert(pts.end(), grid.begin(), grid.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }

  std::vector<Rational> depths(pts.size());
  int workers = std::min<int>(thread_cap(), static_cast<int>(pts.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < pts.size(); ++i) depths[i] = depth_at(a, pts[i]);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= pts.size()) return;
        try {
          depths[i] = depth_at(a, pts[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  size_t best = 0;
  for (size_t i = 1; i < pts.size(); ++i)
    if (depths[i] < depths[best]) best = i;
  Json minimizers = Json::array();
  int count = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    if (depths[i] == depths[best]) {
      minimizers.push_back(point_to_json(pts[i]));
      ++count;
    }

  Json rows = Json::array();
  for (size_t i = 0; i < pts.size(); ++i)
    rows.push_back(Json{{"point", point_to_json(pts[i])},
                        {"depth", rational_to_json(depths[i])}});
  return Json{{"grid_denom", spec.grid_denom},
              {"count", pts.size()},
              {"points", std::move(rows)},
              {"minimum", Json{{"point", point_to_json(pts[best])},
                               {"depth", rational_to_json(depths[best])}}},
              {"minimizers", std::move(minimizers)},
              {"unique_minimum", count == 1}};
}

Json run_katz(const JobSpec& spec) {
  const ConnectionMatrix& a = need_connection(spec);
  Rational slope_val = katz_newton_slope(a.mat(), spec.seed);
  Rational r = spec.depth ? *spec.depth : slope_val;
  long horizon = spec.horizon ? *spec.horizon : default_trace_horizon(a.mat());
  KatzTrace trace = katz_boundedness_trace(a.mat(), r, horizon);
  Json tj = Json::array();
  for (const auto& s : trace.s) {
    if (s)
      tj.push_back(*s);
    else
      tj.push_back(nullptr);
  }
  return Json{{"slope", rational_to_json(slope_val)},
              {"r", rational_to_json(r)},
              {"horizon", trace.horizon},
              {"trace", std::move(tj)},
              {"bounded", trace.bounded}};
}

Json run_pullback(const JobSpec& spec) {
  const ConnectionMatrix& a = need_connection(spec);
  const int e = spec.cover_degree;
  ConnectionMatrix cover = pullback_connection(a, e);
  SlopeReport rep = slope(cover, spec.seed);
  Rational base = rep.slope / Rational(e);
  std::optional<Rational> fg = frenkel_gross_check(cover, e);
  if (fg && *fg != base)
    fail(kInternalError, "pole-order reading " + fg->str() +
                             " disagrees with cover slope / e = " + base.str());
  Json out = Json::object();
  out["e"] = e;
  out["cover_slope"] = rational_to_json(rep.slope);
  out["base_slope"] = rational_to_json(base);
  out["frenkel_gross"] = fg ? Json(fg->str()) : Json(nullptr);
  out["cover"] = slope_report_to_json(rep);
  return out;
}

Json run_check_fundamental(const JobSpec& spec) {
  const ConnectionMatrix& a = need_connection(spec);
  ApartmentPoint x = spec.point ? *spec.point : origin_point(a.group());
  validate_point(a.group(), x);
  Stratum s = leading_representative(a, x);
  Json out = Json::object();
  out["point"] = point_to_json(x);
  out["depth"] = rational_to_json(s.depth());
  out["fundamental"] = is_fundamental(s);
  out["rep"] = matrix_to_json(s.rep());
  if (spec.depth) out["depth_matches"] = (s.depth() == *spec.depth);
  return out;
}

Json run_regular_singular(const JobSpec& spec) {
  const ConnectionMatrix& a = need_connection(spec);
  Rational v = certified_slope(a, spec.seed);
  return Json{{"regular_singular", v.sign() == 0}, {"slope", rational_to_json(v)}};
}

Json run_associates(const JobSpec& spec) {
  if (spec.strata.size() != 2)
    fail(kParseError,
         "command associates requires exactly two strata in the input, got " +
             std::to_string(spec.strata.size()));
  const Stratum& s1 = spec.strata[0];
  const Stratum& s2 = spec.strata[1];
  bool eq = associates_at(s1, s2);
  return Json{{"associates", eq},
              {"depths", Json::array({rational_to_json(s1.depth()),
                                      rational_to_json(s2.depth())})}};
}

std::string human_point(const Json& p) {
  std::string out = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += p[i].get<std::string>();
  }
  return out + ")";
}

void human_matrix(std::ostringstream& os, const std::string& label,
                  const Json& layers, const std::string& indent) {
  os << indent << label << ":\n";
  if (layers.empty()) {
    os << indent << "  0\n";
    return;
  }
  for (const Json& layer : layers) {
    os << indent << "  z^" << layer["power"].get<long>() << " * [";
    const Json& rows = layer["matrix"];
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i) os << "; ";
      const Json& row = rows[i];
      for (size_t j = 0; j < row.size(); ++j) {
        if (j) os << ", ";
        os << row[j].get<std::string>();
      }
    }
    os << "]\n";
  }
}

void human_depth_map(std::ostringstream& os, const Json& rows) {
  for (const Json& row : rows)
    os << "  " << human_point(row["point"]) << " -> "
       << row["depth"].get<std::string>() << "\n";
}

void human_slope_payload(std::ostringstream& os, const Json& p,
                         const std::string& indent) {
  os << indent << "slope: " << p["slope"].get<std::string>() << "\n";
  os << indent << "regular singular: "
     << (p["regular_singular"].get<bool>() ? "yes" : "no") << "\n";
  os << indent << "methods:";
  for (const Json& mv : p["methods"])
    os << " " << mv["method"].get<std::string>() << "="
       << mv["value"].get<std::string>();
  os << "\n";
  if (p.contains("stratum")) {
    const Json& s = p["stratum"];
    os << indent << "stratum: point " << human_point(s["point"]) << ", depth "
       << s["depth"].get<std::string>() << "\n";
    human_matrix(os, "representative", s["rep"], indent);
  }
  if (p.contains("gauge")) human_matrix(os, "gauge", p["gauge"], indent);
  os << indent << "depth map:\n";
  human_depth_map(os, p["depth_map"]);
  for (const Json& d : p["diagnostics"])
    os << indent << "note: " << d.get<std::string>() << "\n";
}

}  // namespace

Report run(const JobSpec& spec) {
  auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.command = spec.command;
  rep.input = input_to_json(spec);
  if (spec.command == "slope")
    rep.payload = run_slope(spec);
  else if (spec.command == "stratum")
    rep.payload = run_stratum(spec);
  else if (spec.command == "depth-map")
    rep.payload = run_depth_map(spec);
  else if (spec.command == "katz")
    rep.payload = run_katz(spec);
  else if (spec.command == "pullback")
    rep.payload = run_pullback(spec);
  else if (spec.command == "check-fundamental")
    rep.payload = run_check_fundamental(spec);
  else if (spec.command == "regular-singular")
    rep.payload = run_regular_singular(spec);
  else if (spec.command == "associates")
    rep.payload = run_associates(spec);
  else
    fail(kParseError, "unknown command \"" + spec.command + "\"");
  auto end = std::chrono::steady_clock::now();
  rep.timing_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count());
  return rep;
}

Json report_to_json(const Report& r, bool include_timing) {
  Json out = Json::object();
  out["version"] = kVersion;
  out["command"] = r.command;
  out["input"] = r.input;
  out["result"] = r.payload;
  if (include_timing) out["timing_ms"] = r.timing_ms;
  return out;
}

std::string report_to_human(const Report& r) {
  std::ostringstream os;
  os << kVersion << "\n";
  const Json& g = r.input["group"];
  os << "command: " << r.command << "  (group " << g["kind"].get<std::string>()
     << ", n = " << g["n"].get<long>() << ")\n";
  const Json& p = r.payload;
  if (r.command == "slope") {
    human_slope_payload(os, p, "");
  } else if (r.command == "stratum") {
    os << "target depth: " << p["target"].get<std::string>() << "\n";
    os << "found: " << (p["found"].get<bool>() ? "yes" : "no") << "\n";
    if (p.contains("stratum")) {
      const Json& s = p["stratum"];
      os << "stratum: point " << human_point(s["point"]) << ", depth "
         << s["depth"].get<std::string>() << "\n";
      human_matrix(os, "representative", s["rep"], "");
    }
    if (p.contains("gauge")) human_matrix(os, "gauge", p["gauge"], "");
    os << "iterations: " << p["iterations"].get<int>() << "\n";
    os << "depth map:\n";
    human_depth_map(os, p["depth_map"]);
    for (const Json& d : p["diagnostics"])
      os << "note: " << d.get<std::string>() << "\n";
  } else if (r.command == "depth-map") {
    os << "points evaluated: " << p["count"].get<long>() << " (grid denominator "
       << p["grid_denom"].get<int>() << ")\n";
    human_depth_map(os, p["points"]);
    os << "minimum: " << human_point(p["minimum"]["point"]) << " -> "
       << p["minimum"]["depth"].get<std::string>() << "\n";
    os << "unique minimum: " << (p["unique_minimum"].get<bool>() ? "yes" : "no")
       << "\n";
  } else if (r.command == "katz") {
    os << "katz slope: " << p["slope"].get<std::string>() << "\n";
    os << "tested rate r: " << p["r"].get<std::string>() << "\n";
    os << "horizon: " << p["horizon"].get<long>() << "\n";
    os << "trace:";
    for (const Json& s : p["trace"]) {
      if (s.is_null())
        os << " -";
      else
        os << " " << s.get<long>();
    }
    os << "\n";
    os << "bounded at rate r: " << (p["bounded"].get<bool>() ? "yes" : "no")
       << "\n";
  } else if (r.command == "pullback") {
    os << "cover degree e: " << p["e"].get<int>() << "\n";
    os << "cover slope: " << p["cover_slope"].get<std::string>() << "\n";
    os << "base slope (cover slope / e): " << p["base_slope"].get<std::string>()
       << "\n";
    if (p["frenkel_gross"].is_null())
      os << "pole-order reading: disengaged (nilpotent leading coefficient)\n";
    else
      os << "pole-order reading: " << p["frenkel_gross"].get<std::string>()
         << "\n";
    os << "cover report:\n";
    human_slope_payload(os, p["cover"], "  ");
  } else if (r.command == "check-fundamental") {
    os << "point: " << human_point(p["point"]) << "\n";
    os << "depth: " << p["depth"].get<std::string>() << "\n";
    os << "fundamental: " << (p["fundamental"].get<bool>() ? "yes" : "no")
       << "\n";
    human_matrix(os, "representative", p["rep"], "");
    if (p.contains("depth_matches"))
      os << "depth matches requested value: "
         << (p["depth_matches"].get<bool>() ? "yes" : "no") << "\n";
  } else if (r.command == "regular-singular") {
    os << "regular singular: "
       << (p["regular_singular"].get<bool>() ? "yes" : "no") << "\n";
    os << "slope: " << p["slope"].get<std::string>() << "\n";
  } else if (r.command == "associates") {
    os << "associates: " << (p["associates"].get<bool>() ? "yes" : "no") << "\n";
    os << "depths: " << p["depths"][0].get<std::string>() << ", "
       << p["depths"][1].get<std::string>() << "\n";
  }
  os << "timing: " << r.timing_ms << " ms\n";
  return os.str();
}

int exit_code_for(const std::string& error_code) {
  if (error_code == kParseError) return 2;
  if (error_code == kDimensionError) return 3;
  if (error_code == kMembershipError) return 4;
  if (error_code == kInvertibilityError) return 5;
  if (error_code == kCapabilityError) return 6;
  if (error_code == kVerificationError) return 7;
  if (error_code == kInternalError) return 8;
  return 1;
}

}  // namespace stratakit
