#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "stratakit/error.hpp"
#include "stratakit/filtration.hpp"
#include "testutil.hpp"

using namespace stratakit;
using testutil::airy_matrix;
using testutil::coxeter_primary;
using testutil::random_int;
using testutil::random_lie;
using testutil::sl3_line_example;
using testutil::sl_barycenter;
using testutil::sp4_example;

namespace {

ApartmentPoint pt(std::vector<Rational> c) { return ApartmentPoint{std::move(c)}; }

}  // namespace

TEST_CASE("connection construction enforces membership") {
  auto sl3 = GroupData::build(GroupKind::SL, 3);
  CHECK_THROWS_AS(ConnectionMatrix(sl3, LaurentMatrix::identity(3)), Error);
  CHECK_THROWS_AS(ConnectionMatrix(sl3, LaurentMatrix(2, 2)), Error);
  ConnectionMatrix ok(sl3, sl3_line_example(0));
  CHECK(ok.mat() == sl3_line_example(0));
}

TEST_CASE("Airy grading at origin and Iwahori point") {
  auto gl2 = GroupData::build(GroupKind::GL, 2);
  for (int r : {1, 2, 3}) {
    LaurentMatrix a = airy_matrix(r);
    auto origin_parts = graded_decompose(*gl2, a, pt({Rational(0), Rational(0)}));
    REQUIRE(origin_parts.size() == 2);
    CHECK(origin_parts[0].degree == Rational(-r));
    CHECK(origin_parts[1].degree == Rational(-r + 1));

    auto iwahori_parts =
        graded_decompose(*gl2, a, pt({Rational(1, 4), Rational(-1, 4)}));
    REQUIRE(iwahori_parts.size() == 1);
    CHECK(iwahori_parts[0].degree == Rational(-r) + Rational(1, 2));
    CHECK(iwahori_parts[0].part == a);

    ConnectionMatrix conn(gl2, a);
    CHECK(depth_at(conn, pt({Rational(0), Rational(0)})) == Rational(r));
    CHECK(depth_at(conn, pt({Rational(1, 4), Rational(-1, 4)})) ==
          Rational(r) - Rational(1, 2));
  }
}

TEST_CASE("SL3 line example depth") {
  auto sl3 = GroupData::build(GroupKind::SL, 3);
  for (int m : {0, 1, 2}) {
    ConnectionMatrix a(sl3, sl3_line_example(m));
    ApartmentPoint x = pt({Rational(1, 4), Rational(-1, 4), Rational(0)});
    CHECK(depth_at(a, x) == Rational(m) + Rational(1, 2));
    auto parts = graded_decompose(*sl3, a.mat(), x);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].part == a.mat());
    CHECK(depth_at(a, pt({Rational(0), Rational(0), Rational(0)})) ==
          Rational(m + 1));
  }
}

TEST_CASE("torus connection depth is point independent") {
  auto gl2 = GroupData::build(GroupKind::GL, 2);
  LaurentMatrix d(2, 2);
  d.at(0, 0) = LaurentScalar::monomial(-1, 1);
  d.at(1, 1) = LaurentScalar::monomial(-1, 2);
  ConnectionMatrix a(gl2, d);
  for (const auto& x : optimal_points(*gl2)) CHECK(depth_at(a, x) == Rational(1));
}

TEST_CASE("zero connection has depth zero") {
  auto sl2 = GroupData::build(GroupKind::SL, 2);
  ConnectionMatrix a(sl2, LaurentMatrix(2, 2));
  CHECK(depth_at(a, pt({Rational(1, 4), Rational(-1, 4)})) == Rational(0));
  CHECK(graded_decompose(*sl2, LaurentMatrix(2, 2),
                         pt({Rational(0), Rational(0)}))
            .empty());
}

TEST_CASE("positive-degree connections clamp to depth zero") {
  auto gl2 = GroupData::build(GroupKind::GL, 2);
  LaurentMatrix n = LaurentScalar::variable() * LaurentMatrix::unit(2, 0, 1);
  ConnectionMatrix a(gl2, n);
  CHECK(depth_at(a, pt({Rational(0), Rational(0)})) == Rational(0));
}

TEST_CASE("frozen critical numbers") {
  auto sl2 = GroupData::build(GroupKind::SL, 2);
  CriticalSet cs =
      critical_numbers(*sl2, pt({Rational(1, 4), Rational(-1, 4)}), Rational(1));
  CHECK(cs.values == std::vector<Rational>{Rational(-1), Rational(-1, 2),
                                           Rational(0), Rational(1, 2),
                                           Rational(1)});

  auto sl3 = GroupData::build(GroupKind::SL, 3);
  CriticalSet cs3 = critical_numbers(
      *sl3, pt({Rational(1, 4), Rational(-1, 4), Rational(0)}), Rational(1));
  CHECK(cs3.values ==
        std::vector<Rational>{Rational(-1), Rational(-3, 4), Rational(-1, 2),
                              Rational(-1, 4), Rational(0), Rational(1, 4),
                              Rational(1, 2), Rational(3, 4), Rational(1)});
}

TEST_CASE("graded pieces satisfy the eigenvalue identity") {
  std::mt19937_64 rng(2024);
  std::vector<GroupPtr> groups = {
      GroupData::build(GroupKind::GL, 2), GroupData::build(GroupKind::GL, 3),
      GroupData::build(GroupKind::SL, 3), GroupData::build(GroupKind::Sp, 4)};
  int rounds = 0;
  while (rounds < 1000) {
    const GroupPtr& g = groups[static_cast<size_t>(rounds) % groups.size()];
    auto pts = optimal_points(*g);
    const ApartmentPoint& x =
        pts[static_cast<size_t>(random_int(rng, 0, static_cast<long>(pts.size()) - 1))];
    LaurentMatrix a = random_lie(rng, *g);
    LaurentMatrix xt = embed_point(*g, x);
    LaurentMatrix sum(g->size, g->size);
    for (const GradedComponent& c : graded_decompose(*g, a, x)) {
      // tau(P) + [x, P] = degree * P characterizes the graded piece.
      LaurentMatrix lhs = c.part.tau() + bracket(xt, c.part);
      LaurentMatrix rhs(g->size, g->size);
      for (int i = 0; i < g->size; ++i)
        for (int j = 0; j < g->size; ++j)
          rhs.at(i, j) = LaurentScalar(c.degree) * c.part.at(i, j);
      CHECK(lhs == rhs);
      sum += c.part;
    }
    CHECK(sum == a);
    ++rounds;
  }
}

TEST_CASE("graded degrees are critical numbers") {
  std::mt19937_64 rng(3131);
  auto sp4 = GroupData::build(GroupKind::Sp, 4);
  auto pts = optimal_points(*sp4);
  for (int round = 0; round < 200; ++round) {
    const ApartmentPoint& x =
        pts[static_cast<size_t>(random_int(rng, 0, static_cast<long>(pts.size()) - 1))];
    LaurentMatrix a = random_lie(rng, *sp4);
    auto parts = graded_decompose(*sp4, a, x);
    Rational bound(0);
    for (const auto& c : parts) bound = max(bound, abs(c.degree));
    if (parts.empty()) continue;
    CriticalSet cs = critical_numbers(*sp4, x, bound);
    for (const auto& c : parts)
      CHECK(std::find(cs.values.begin(), cs.values.end(), c.degree) !=
            cs.values.end());
    for (size_t i = 1; i < parts.size(); ++i)
      CHECK(parts[i - 1].degree < parts[i].degree);
  }
}

TEST_CASE("depth shifts by k under multiplication by z^-k") {
  std::mt19937_64 rng(4242);
  std::vector<GroupPtr> groups = {GroupData::build(GroupKind::GL, 3),
                                  GroupData::build(GroupKind::SL, 2),
                                  GroupData::build(GroupKind::Sp, 4)};
  int done = 0;
  while (done < 200) {
    const GroupPtr& g = groups[static_cast<size_t>(done) % groups.size()];
    auto pts = optimal_points(*g);
    const ApartmentPoint& x =
        pts[static_cast<size_t>(random_int(rng, 0, static_cast<long>(pts.size()) - 1))];
    LaurentMatrix m = random_lie(rng, *g);
    ConnectionMatrix a(g, m);
    Rational d = depth_at(a, x);
    if (d.sign() == 0) continue;
    int k = static_cast<int>(random_int(rng, 1, 3));
    ConnectionMatrix shifted(g, LaurentScalar::monomial(-k, 1) * m);
    CHECK(depth_at(shifted, x) == d + Rational(k));
    ++done;
  }
}

TEST_CASE("Coxeter connections are homogeneous at the barycenter") {
  for (int n : {2, 3, 4}) {
    auto g = GroupData::build(GroupKind::SL, n);
    ApartmentPoint b = sl_barycenter(n);
    for (int m : {0, 1}) {
      ConnectionMatrix a(g, coxeter_primary(*g, m));
      CHECK(depth_at(a, b) == Rational(m) + Rational(1, n));
      auto parts = graded_decompose(*g, a.mat(), b);
      CHECK(parts.size() == 1);
      CHECK(depth_at(a, origin_point(*g)) == Rational(m + 1));
    }
  }
  auto sp4 = GroupData::build(GroupKind::Sp, 4);
  ApartmentPoint b = pt({Rational(3, 8), Rational(1, 8)});
  ConnectionMatrix a(sp4, coxeter_primary(*sp4, 0));
  CHECK(depth_at(a, b) == Rational(1, 4));
}

TEST_CASE("Sp4 example depth") {
  auto sp4 = GroupData::build(GroupKind::Sp, 4);
  for (int m : {0, 1}) {
    ConnectionMatrix a(sp4, sp4_example(m));
    CHECK(depth_at(a, pt({Rational(1, 4), Rational(1, 4)})) ==
          Rational(m) + Rational(1, 2));
    CHECK(depth_at(a, origin_point(*sp4)) == Rational(m + 1));
  }
}
