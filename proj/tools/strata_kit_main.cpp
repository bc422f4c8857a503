#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stratakit/error.hpp"
#include "stratakit/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    stratakit::fail(stratakit::kParseError, "cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

stratakit::ApartmentPoint parse_point_flag(const std::string& text) {
  stratakit::ApartmentPoint x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    x.coords.push_back(stratakit::Rational::from_string(item));
  if (x.coords.empty())
    stratakit::fail(stratakit::kParseError, "--point: empty coordinate list");
  return x;
}

struct Options {
  std::string file;
  bool json = false;
  bool no_timing = false;
  std::string point;
  std::string depth;
  long e = 0;
  long horizon = 0;
  long grid_denom = -1;
  std::string seed;
};

void add_command(CLI::App& app, const std::string& name,
                 const std::string& help, Options& opt,
                 std::vector<std::string>& chosen) {
  CLI::App* cmd = app.add_subcommand(name, help);
  cmd->add_option("file", opt.file, "input JSON file")->required();
  cmd->add_flag("--json", opt.json, "emit the machine-readable report");
  cmd->add_flag("--no-timing", opt.no_timing,
                "omit timing_ms from the JSON report");
  cmd->add_option("--point", opt.point,
                  "apartment point, comma-separated rationals");
  cmd->add_option("--depth", opt.depth, "rational depth p/q");
  cmd->add_option("--e", opt.e, "cover degree for pullback");
  cmd->add_option("--horizon", opt.horizon, "trace horizon for katz");
  cmd->add_option("--grid-denom", opt.grid_denom,
                  "alcove grid denominator for depth-map (0 disables)");
  cmd->add_option("--seed", opt.seed, "seed for the cyclic-vector search");
  cmd->callback([&chosen, name] { chosen.push_back(name); });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact slope and fundamental stratum computations for formal "
               "connections over the punctured disk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", stratakit::kVersion);

  Options opt;
  std::vector<std::string> chosen;
  add_command(app, "slope", "certified slope with stratum search", opt, chosen);
  add_command(app, "stratum", "stratum search at a target depth", opt, chosen);
  add_command(app, "depth-map", "depth at optimal points plus an alcove grid",
              opt, chosen);
  add_command(app, "katz", "Newton-polygon slope and growth trace", opt, chosen);
  add_command(app, "pullback", "pull back along z = u^e, then slope", opt,
              chosen);
  add_command(app, "check-fundamental",
              "leading stratum at a point, fundamentality check", opt, chosen);
  add_command(app, "regular-singular", "regular-singularity test", opt, chosen);
  add_command(app, "associates", "associate test for two strata", opt, chosen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error[parse_error]: " << e.what() << "\n";
    return 2;
  }

  stratakit::JobSpec spec = stratakit::parse_input(read_file(opt.file));
  spec.command = chosen.front();
  if (!opt.point.empty()) {
    stratakit::ApartmentPoint x = parse_point_flag(opt.point);
    try {
      stratakit::validate_point(*spec.group, x);
    } catch (const stratakit::Error& e) {
      stratakit::fail(e.code(), std::string("--point: ") + e.what());
    }
    spec.point = std::move(x);
  }
  if (!opt.depth.empty()) spec.depth = stratakit::Rational::from_string(opt.depth);
  if (opt.e != 0) {
    if (opt.e < 1)
      stratakit::fail(stratakit::kParseError,
                      "--e: cover degree must be a positive integer");
    spec.cover_degree = static_cast<int>(opt.e);
  }
  if (opt.horizon != 0) {
    if (opt.horizon < 1)
      stratakit::fail(stratakit::kParseError,
                      "--horizon: must be a positive integer");
    spec.horizon = opt.horizon;
  }
  if (opt.grid_denom >= 0) {
    if (opt.grid_denom > 24)
      stratakit::fail(stratakit::kParseError,
                      "--grid-denom: must be in [0, 24]");
    spec.grid_denom = static_cast<int>(opt.grid_denom);
  }
  if (!opt.seed.empty()) spec.seed = std::stoull(opt.seed);

  stratakit::Report rep = stratakit::run(spec);
  if (opt.json)
    std::cout << stratakit::report_to_json(rep, !opt.no_timing).dump(2) << "\n";
  else
    std::cout << stratakit::report_to_human(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const stratakit::Error& e) {
    std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
    return stratakit::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error[internal_inconsistency]: " << e.what() << "\n";
    return stratakit::exit_code_for(stratakit::kInternalError);
  }
}
