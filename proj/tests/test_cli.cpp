#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "stratakit/error.hpp"
#include "stratakit/report.hpp"
#include "testutil.hpp"

using namespace stratakit;

namespace {

std::filesystem::path g_bindir;

std::string kit_binary() { return (g_bindir / "strata-kit").string(); }

struct RunOutcome {
  int exit_code;
  std::string out;
};

// Runs the CLI binary with stdout captured and stderr appended to it.
RunOutcome run_kit(const std::string& args) {
  std::string cmd = kit_binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, out};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream f(p);
  f << text;
  f.close();
  return p;
}

std::string coxeter_sl2_input() {
  auto sl2 = GroupData::build(GroupKind::SL, 2);
  JobSpec spec;
  spec.group = sl2;
  spec.connection = ConnectionMatrix(sl2, testutil::coxeter_primary(*sl2, 0));
  return render_input(spec);
}

JobSpec parsed(const std::string& text, const std::string& command) {
  JobSpec spec = parse_input(text);
  spec.command = command;
  return spec;
}

void check_parse_fails(const std::string& text, const char* code,
                       const std::string& fragment) {
  try {
    parse_input(text);
    FAIL("expected a parse failure for: " << fragment);
  } catch (const Error& e) {
    CHECK(e.code() == code);
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("input validation rejects malformed documents with path context") {
  check_parse_fails("{", kParseError, "not valid JSON");
  check_parse_fails("[1,2]", kParseError, "expected a JSON object");
  check_parse_fails("{}", kParseError, "missing \"group\"");
  check_parse_fails(R"({"group": {"kind": "GL", "n": 2}, "bogus": 1})",
                    kParseError, "unknown key \"bogus\"");
  check_parse_fails(R"({"group": {"kind": "XX", "n": 2}})", kParseError,
                    "group.kind");
  check_parse_fails(R"({"group": {"kind": "GL", "n": 0}})", kParseError,
                    "group.n");
  check_parse_fails(R"({"group": {"kind": "GL", "n": 65}})", kParseError,
                    "group.n");
  check_parse_fails(R"({"group": {"kind": "Sp", "n": 3}})", kParseError, "even");
  check_parse_fails(
      R"({"group": {"kind": "GL", "n": 1},
          "connection": [{"power": 0, "matrix": [["1"]]},
                         {"power": 0, "matrix": [["2"]]}]})",
      kParseError, "duplicate power");
  check_parse_fails(
      R"({"group": {"kind": "GL", "n": 2},
          "connection": [{"power": 0, "matrix": [["1"]]}]})",
      kParseError, "matrix");
  check_parse_fails(
      R"({"group": {"kind": "GL", "n": 1},
          "connection": [{"power": 0, "matrix": [["1/0"]]}]})",
      kParseError, "denominator");
  check_parse_fails(
      R"({"group": {"kind": "GL", "n": 1},
          "connection": [{"power": 0, "matrix": [["q"]]}]})",
      kParseError, "rational");
  check_parse_fails(R"({"group": {"kind": "GL", "n": 2}, "e": 0})", kParseError,
                    "e");
  check_parse_fails(R"({"group": {"kind": "GL", "n": 2}, "horizon": 0})",
                    kParseError, "horizon");
  check_parse_fails(R"({"group": {"kind": "GL", "n": 2}, "grid_denom": 25})",
                    kParseError, "grid_denom");
  check_parse_fails(R"({"group": {"kind": "GL", "n": 2}, "point": ["1/4"]})",
                    kParseError, "point");
}

TEST_CASE("membership violations keep their error code through parsing") {
  try {
    parse_input(
        R"({"group": {"kind": "SL", "n": 2},
            "connection": [{"power": 0, "matrix": [["1","0"],["0","0"]]}]})");
    FAIL("expected a membership failure");
  } catch (const Error& e) {
    CHECK(e.code() == kMembershipError);
    CHECK(std::string(e.what()).find("connection") != std::string::npos);
  }
}

TEST_CASE("render and parse are mutually inverse") {
  std::mt19937_64 rng(515);
  std::vector<GroupPtr> groups = {
      GroupData::build(GroupKind::GL, 1), GroupData::build(GroupKind::GL, 2),
      GroupData::build(GroupKind::SL, 3), GroupData::build(GroupKind::Sp, 4)};
  for (int round = 0; round < 120; ++round) {
    const GroupPtr& g = groups[static_cast<size_t>(round) % groups.size()];
    JobSpec spec;
    spec.group = g;
    spec.connection = ConnectionMatrix(g, testutil::random_lie(rng, *g, -2, 2));
    if (round % 3 == 0) {
      const auto pts = optimal_points(*g);
      const ApartmentPoint& x =
          pts[static_cast<size_t>(testutil::random_int(rng, 0, static_cast<long>(pts.size()) - 1))];
      Stratum s = leading_representative(*spec.connection, x);
      spec.strata.push_back(s);
      spec.point = x;
    }
    if (round % 4 == 0) spec.depth = Rational(testutil::random_int(rng, 0, 9), 2);
    if (round % 5 == 0) spec.horizon = testutil::random_int(rng, 1, 40);
    if (round % 7 == 0) spec.cover_degree = static_cast<int>(testutil::random_int(rng, 2, 5));
    if (round % 2 == 0) spec.grid_denom = static_cast<int>(testutil::random_int(rng, 0, 24));
    spec.seed = rng();

    std::string text = render_input(spec);
    JobSpec back = parse_input(text);
    CHECK(render_input(back) == text);
    CHECK(back.group->kind == g->kind);
    CHECK(back.group->size == g->size);
    REQUIRE(back.connection.has_value());
    CHECK(back.connection->mat() == spec.connection->mat());
    CHECK(back.seed == spec.seed);
    CHECK(back.cover_degree == spec.cover_degree);
    CHECK(back.grid_denom == spec.grid_denom);
    CHECK(back.strata.size() == spec.strata.size());
    for (size_t i = 0; i < spec.strata.size(); ++i) {
      CHECK(back.strata[i].point() == spec.strata[i].point());
      CHECK(back.strata[i].depth() == spec.strata[i].depth());
      CHECK(back.strata[i].rep() == spec.strata[i].rep());
    }
  }
}

TEST_CASE("slope command payload on the Coxeter example") {
  Report rep = run(parsed(coxeter_sl2_input(), "slope"));
  CHECK(rep.command == "slope");
  const Json& p = rep.payload;
  CHECK(p["slope"] == "1/2");
  CHECK(p["regular_singular"] == false);
  REQUIRE(p.contains("stratum"));
  CHECK(p["stratum"]["depth"] == "1/2");
  CHECK(p["stratum"]["point"] == Json::array({"1/4", "-1/4"}));
  CHECK(p["depth_map"].size() == 3);
  bool has_adjoint = false;
  for (const auto& m : p["methods"])
    if (m["method"] == "adjoint_newton" && m["value"] == "1/2") has_adjoint = true;
  CHECK(has_adjoint);
  Json j = report_to_json(rep);
  CHECK(j["version"] == kVersion);
  CHECK(j["command"] == "slope");
  CHECK(j.contains("timing_ms"));
  CHECK(j["input"]["group"]["kind"] == "SL");
}

TEST_CASE("stratum command reports the certified target") {
  auto sl3 = GroupData::build(GroupKind::SL, 3);
  JobSpec spec;
  spec.group = sl3;
  spec.connection = ConnectionMatrix(sl3, testutil::sl3_line_example(0));
  spec.command = "stratum";
  Report rep = run(spec);
  const Json& p = rep.payload;
  CHECK(p["target"] == "1/2");
  CHECK(p["found"] == true);
  CHECK(p["iterations"] == 1);
  CHECK(p["stratum"]["depth"] == "1/2");
  CHECK(p["stratum"]["point"] == Json::array({"1/3", "-1/6", "-1/6"}));
}

TEST_CASE("depth-map command over optimal points and grid") {
  auto sp4 = GroupData::build(GroupKind::Sp, 4);
  JobSpec spec;
  spec.group = sp4;
  spec.connection = ConnectionMatrix(sp4, testutil::sp4_example(0));
  spec.command = "depth-map";
  Report rep = run(spec);
  const Json& p = rep.payload;
  CHECK(p["grid_denom"] == 8);
  CHECK(p["count"] == 17);
  CHECK(p["points"].size() == 17);
  CHECK(p["unique_minimum"] == true);
  CHECK(p["minimum"]["point"] == Json::array({"1/4", "1/4"}));
  CHECK(p["minimum"]["depth"] == "1/2");
  CHECK(p["minimizers"].size() == 1);

  spec.grid_denom = 0;
  Report opt_only = run(spec);
  CHECK(opt_only.payload["count"] == 7);
}

TEST_CASE("depth-map payload is identical across thread caps") {
  auto sl3 = GroupData::build(GroupKind::SL, 3);
  JobSpec spec;
  spec.group = sl3;
  spec.connection = ConnectionMatrix(sl3, testutil::sl3_line_example(1));
  spec.command = "depth-map";
  spec.grid_denom = 12;
  setenv("STRATA_KIT_THREADS", "1", 1);
  Report serial = run(spec);
  setenv("STRATA_KIT_THREADS", "7", 1);
  Report parallel = run(spec);
  unsetenv("STRATA_KIT_THREADS");
  CHECK(serial.payload == parallel.payload);
}

TEST_CASE("katz command trace payload") {
  auto gl2 = GroupData::build(GroupKind::GL, 2);
  JobSpec spec;
  spec.group = gl2;
  spec.connection = ConnectionMatrix(gl2, testutil::airy_matrix(1));
  spec.command = "katz";
  Report rep = run(spec);
  const Json& p = rep.payload;
  CHECK(p["slope"] == "1/2");
  CHECK(p["r"] == "1/2");
  CHECK(p["horizon"] == 16);
  CHECK(p["bounded"] == true);
  REQUIRE(p["trace"].size() == 16);
  CHECK(p["trace"][0] == 1);
  CHECK(p["trace"][2] == 2);

  spec.depth = Rational(1, 4);
  spec.horizon = 20;
  Report below = run(spec);
  CHECK(below.payload["r"] == "1/4");
  CHECK(below.payload["horizon"] == 20);
  CHECK(below.payload["bounded"] == false);
}

TEST_CASE("pullback command with engaged pole reading") {
  auto gl2 = GroupData::build(GroupKind::GL, 2);
  LaurentMatrix m(2, 2);
  m.at(0, 1) = LaurentScalar::monomial(-1, Rational(2));
  m.at(1, 0) = LaurentScalar::monomial(-1, Rational(2));
  JobSpec spec;
  spec.group = gl2;
  spec.connection = ConnectionMatrix(gl2, m);
  spec.command = "pullback";
  spec.cover_degree = 2;
  Report rep = run(spec);
  const Json& p = rep.payload;
  CHECK(p["e"] == 2);
  CHECK(p["base_slope"] == "1");
  CHECK(p["cover_slope"] == "2");
  CHECK(p["frenkel_gross"] == "1");
  CHECK(p["cover"]["slope"] == "2");

  // Nilpotent cover leading coefficient: the pole reading disengages.
  auto sl2 = GroupData::build(GroupKind::SL, 2);
  JobSpec cox;
  cox.group = sl2;
  cox.connection = ConnectionMatrix(sl2, testutil::coxeter_primary(*sl2, 0));
  cox.command = "pullback";
  cox.cover_degree = 2;
  Report rep2 = run(cox);
  CHECK(rep2.payload["base_slope"] == "1/2");
  CHECK(rep2.payload["cover_slope"] == "1");
  CHECK(rep2.payload["frenkel_gross"].is_null());
}

TEST_CASE("check-fundamental command at chosen points") {
  auto gl2 = GroupData::build(GroupKind::GL, 2);
  JobSpec spec;
  spec.group = gl2;
  spec.connection = ConnectionMatrix(gl2, testutil::airy_matrix(1));
  spec.command = "check-fundamental";
  spec.point = ApartmentPoint{{Rational(1, 4), Rational(-1, 4)}};
  Report rep = run(spec);
  CHECK(rep.payload["fundamental"] == true);
  CHECK(rep.payload["depth"] == "1/2");

  spec.point.reset();
  Report at_origin = run(spec);
  CHECK(at_origin.payload["point"] == Json::array({"0", "0"}));
  CHECK(at_origin.payload["fundamental"] == false);
  CHECK(at_origin.payload["depth"] == "1");

  spec.depth = Rational(1);
  Report with_depth = run(spec);
  CHECK(with_depth.payload["depth_matches"] == true);
}

TEST_CASE("regular-singular command") {
  auto gl2 = GroupData::build(GroupKind::GL, 2);
  LaurentMatrix c(2, 2);
  c.at(0, 0) = LaurentScalar(Rational(3));
  c.at(0, 1) = LaurentScalar::monomial(2, Rational(1));
  JobSpec spec;
  spec.group = gl2;
  spec.connection = ConnectionMatrix(gl2, c);
  spec.command = "regular-singular";
  Report rep = run(spec);
  CHECK(rep.payload["regular_singular"] == true);
  CHECK(rep.payload["slope"] == "0");

  spec.connection = ConnectionMatrix(gl2, testutil::airy_matrix(2));
  Report irr = run(spec);
  CHECK(irr.payload["regular_singular"] == false);
  CHECK(irr.payload["slope"] == "3/2");
}

TEST_CASE("associates command needs exactly two strata") {
  auto sl3 = GroupData::build(GroupKind::SL, 3);
  ConnectionMatrix a(sl3, testutil::sl3_line_example(0));
  ApartmentPoint x{{Rational(1, 3), Rational(-1, 6), Rational(-1, 6)}};
  ApartmentPoint y{{Rational(1, 2), Rational(0), Rational(-1, 2)}};
  JobSpec spec;
  spec.group = sl3;
  spec.strata = {leading_representative(a, x), leading_representative(a, y)};
  spec.command = "associates";
  Report rep = run(spec);
  CHECK(rep.payload["associates"] == true);
  CHECK(rep.payload["depths"] == Json::array({"1/2", "1/2"}));

  spec.strata.pop_back();
  try {
    run(spec);
    FAIL("expected a parse failure for one stratum");
  } catch (const Error& e) {
    CHECK(e.code() == kParseError);
  }
}

TEST_CASE("unknown command is a parse error") {
  JobSpec spec = parsed(coxeter_sl2_input(), "explode");
  try {
    run(spec);
    FAIL("expected a parse failure");
  } catch (const Error& e) {
    CHECK(e.code() == kParseError);
  }
}

TEST_CASE("reports are deterministic apart from timing") {
  auto sp4 = GroupData::build(GroupKind::Sp, 4);
  JobSpec spec;
  spec.group = sp4;
  spec.connection = ConnectionMatrix(sp4, testutil::sp4_example(1));
  for (const char* cmd :
       {"slope", "stratum", "depth-map", "katz", "regular-singular"}) {
    spec.command = cmd;
    Report r1 = run(spec);
    Report r2 = run(spec);
    CHECK(report_to_json(r1, false) == report_to_json(r2, false));
  }
}

TEST_CASE("exit codes are pinned") {
  CHECK(exit_code_for(kParseError) == 2);
  CHECK(exit_code_for(kDimensionError) == 3);
  CHECK(exit_code_for(kMembershipError) == 4);
  CHECK(exit_code_for(kInvertibilityError) == 5);
  CHECK(exit_code_for(kCapabilityError) == 6);
  CHECK(exit_code_for(kVerificationError) == 7);
  CHECK(exit_code_for(kInternalError) == 8);
  CHECK(exit_code_for("anything_else") == 1);
}

TEST_CASE("binary runs end to end") {
  auto input = write_temp("strata_kit_cli_test.json", coxeter_sl2_input());

  RunOutcome human = run_kit("slope " + input.string());
  CHECK(human.exit_code == 0);
  CHECK(human.out.find("slope: 1/2") != std::string::npos);

  RunOutcome js = run_kit("slope --json --no-timing " + input.string());
  CHECK(js.exit_code == 0);
  Json j = Json::parse(js.out);
  CHECK(j["version"] == kVersion);
  CHECK(j["result"]["slope"] == "1/2");
  CHECK(!j.contains("timing_ms"));

  RunOutcome js2 = run_kit("slope --json --no-timing " + input.string());
  CHECK(js2.out == js.out);

  RunOutcome flag = run_kit("check-fundamental --point 1/4,-1/4 --json " +
                            input.string());
  CHECK(flag.exit_code == 0);
  Json jf = Json::parse(flag.out);
  CHECK(jf["result"]["fundamental"] == true);

  RunOutcome missing = run_kit("slope /nonexistent/input.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("error[parse_error]") != std::string::npos);

  auto bad = write_temp(
      "strata_kit_cli_bad.json",
      R"({"group": {"kind": "SL", "n": 2},
          "connection": [{"power": 0, "matrix": [["1","0"],["0","0"]]}]})");
  RunOutcome member = run_kit("slope " + bad.string());
  CHECK(member.exit_code == 4);
  CHECK(member.out.find("error[membership_error]") != std::string::npos);

  RunOutcome help = run_kit("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("slope") != std::string::npos);

  std::filesystem::remove(input);
  std::filesystem::remove(bad);
}

int main(int argc, char** argv) {
  g_bindir = std::filesystem::absolute(std::filesystem::path(argv[0])).parent_path();
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
