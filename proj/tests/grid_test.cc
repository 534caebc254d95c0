#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nash_sens/errors.h"
#include "nash_sens/grid.h"

namespace ns = nash_sens;

namespace {

ns::Grid UnitSquare(int points) {
  return ns::BuildGrid(ns::GridSpec::Uniform(2, 0.0, 1.0, points));
}

std::int64_t At(const ns::Grid& g, double y1, double y2) {
  const std::int64_t a = g.FindCoordinate(0, 0, y1);
  const std::int64_t b = g.FindCoordinate(1, 0, y2);
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  const std::int64_t locals[] = {a, b};
  return g.ProfileIndex(locals);
}

// Brute-force Hausdorff distance straight from coordinates.
double NaiveHausdorff(const ns::ProfileSet& a, const ns::ProfileSet& b,
                      const ns::Grid& g) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto dist = [&](std::int64_t p, std::int64_t q) {
    const auto yp = g.Profile(p).flat();
    const auto yq = g.Profile(q).flat();
    double s = 0;
    for (std::size_t k = 0; k < yp.size(); ++k) s += (yp[k] - yq[k]) * (yp[k] - yq[k]);
    return std::sqrt(s);
  };
  auto directed = [&](const ns::ProfileSet& x, const ns::ProfileSet& y) {
    double worst = 0;
    for (auto p : x.indices()) {
      double best = std::numeric_limits<double>::infinity();
      for (auto q : y.indices()) best = std::min(best, dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

ns::ProfileSet RandomSet(std::mt19937_64& rng, const ns::Grid& g, int max_n) {
  std::vector<std::int64_t> idx;
  const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  for (int k = 0; k < n; ++k) {
    idx.push_back(std::uniform_int_distribution<std::int64_t>(0, g.size() - 1)(rng));
  }
  return ns::ProfileSet(g, idx);
}

}  // namespace

TEST_CASE("build grid coordinates") {
  const auto g = ns::BuildGrid({{{{0.0, 1.0, 3}}, {{0.0, 2.0, 5}}}});
  CHECK(g.coords(0, 0) == std::vector<double>{0, 0.5, 1});
  CHECK(g.coords(1, 0) == std::vector<double>{0, 0.5, 1, 1.5, 2});
  CHECK(g.size() == 15);
  CHECK(g.min_spacing() == 0.5);
}

TEST_CASE("build grid rejects bad specs") {
  CHECK_THROWS_AS(ns::BuildGrid(ns::GridSpec::Uniform(1, 0, 1, 1)), ns::ConfigError);
  CHECK_THROWS_AS(ns::BuildGrid(ns::GridSpec::Uniform(1, 1, 1, 5)), ns::ConfigError);
  CHECK_THROWS_AS(ns::BuildGrid(ns::GridSpec::Uniform(1, 0, NAN, 5)), ns::ConfigError);
  CHECK_THROWS_AS(ns::BuildGrid(ns::GridSpec{}), ns::ConfigError);
}

TEST_CASE("last coordinate hits the upper bound exactly") {
  const auto g = ns::BuildGrid(ns::GridSpec::Uniform(1, 0.1, 0.7, 7));
  CHECK(g.coords(0, 0).back() == 0.7);
  CHECK(std::is_sorted(g.coords(0, 0).begin(), g.coords(0, 0).end()));
}

TEST_CASE("profile indexing is row-major and bijective") {
  const auto g = ns::BuildGrid({{{{0, 1, 3}, {0, 1, 2}}, {{0, 1, 4}}}});
  REQUIRE(g.size() == 24);
  std::int64_t expect = 0;
  for (std::int64_t a = 0; a < 6; ++a) {
    for (std::int64_t b = 0; b < 4; ++b) {
      const std::int64_t locals[] = {a, b};
      CHECK(g.ProfileIndex(locals) == expect);
      std::int64_t back[2];
      g.Decompose(expect, back);
      CHECK(back[0] == a);
      CHECK(back[1] == b);
      CHECK(g.Combine(0, a, g.OthersIndex(expect, 0)) == expect);
      CHECK(g.Combine(1, b, g.OthersIndex(expect, 1)) == expect);
      ++expect;
    }
  }
  std::int64_t axes[2];
  g.AxisIndices(0, 5, axes);
  CHECK(axes[0] == 2);
  CHECK(axes[1] == 1);
  CHECK(g.LocalFromAxes(0, axes) == 5);
}

TEST_CASE("ball dilate open and closed") {
  const auto g = ns::BuildGrid(ns::GridSpec::Uniform(1, 0, 1, 21));
  const ns::PointSet s({g.FindCoordinate(0, 0, 0.5)});
  auto coords = [&](const ns::PointSet& p) {
    std::vector<double> out;
    for (auto i : p.indices()) out.push_back(g.coords(0, 0)[i]);
    return out;
  };
  const auto open = ns::BallDilate(s, 0.1, g, 0, false);
  REQUIRE(open.size() == 3);
  CHECK(coords(open)[0] == doctest::Approx(0.45));
  CHECK(coords(open)[2] == doctest::Approx(0.55));
  const auto closed = ns::BallDilate(s, 0.1, g, 0, true);
  REQUIRE(closed.size() == 5);
  CHECK(coords(closed).front() == doctest::Approx(0.4));
  CHECK(coords(closed).back() == doctest::Approx(0.6));
  CHECK(ns::BallDilate(s, 3.0, g, 0, false).size() == 21);
  CHECK_THROWS_AS(ns::BallDilate(ns::PointSet{}, 0.1, g, 0, false), ns::DomainError);
}

TEST_CASE("ball dilate monotone and composes") {
  std::mt19937_64 rng(11);
  const auto g = ns::BuildGrid(ns::GridSpec::Uniform(1, 0, 1, 41));
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> idx;
    for (int k = 0; k < 3; ++k) idx.push_back(rng() % 41);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const ns::PointSet small({idx[0]});
    const ns::PointSet big(idx);
    const double e1 = (1 + rng() % 100) / 400.0, e2 = (1 + rng() % 100) / 400.0;
    const bool closed = rng() % 2;
    const auto d1 = ns::BallDilate(big, e1, g, 0, closed);
    const auto d12 = ns::BallDilate(big, e1 + e2, g, 0, closed);
    const auto d1_2 = ns::BallDilate(d1, e2, g, 0, closed);
    auto subset = [](const ns::PointSet& a, const ns::PointSet& b) {
      return std::includes(b.indices().begin(), b.indices().end(),
                           a.indices().begin(), a.indices().end());
    };
    CHECK(subset(ns::BallDilate(small, e1, g, 0, closed), d1));
    CHECK(subset(d1, d12));
    CHECK(subset(d1_2, d12));
  }
}

TEST_CASE("hausdorff examples") {
  const auto g = UnitSquare(101);
  const ns::ProfileSet origin(g, {At(g, 0, 0)});
  const ns::ProfileSet both(g, {At(g, 0, 0), At(g, 1, 1)});
  CHECK(ns::Hausdorff(origin, both, g) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(ns::Hausdorff(both, both, g) == 0.0);
  CHECK(std::isinf(ns::Hausdorff(both, ns::ProfileSet(g, {}), g)));
  CHECK(ns::Hausdorff(ns::ProfileSet(g, {}), ns::ProfileSet(g, {}), g) == 0.0);
  const auto other = UnitSquare(11);
  CHECK_THROWS_AS(ns::Hausdorff(origin, ns::ProfileSet(other, {0}), g), ns::DomainError);
}

TEST_CASE("hausdorff matches brute force and is a metric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int players = 1 + trial % 3;
    const auto g = ns::BuildGrid(ns::GridSpec::Uniform(players, 0, 1, players == 3 ? 6 : 13));
    const auto a = RandomSet(rng, g, 8);
    const auto b = RandomSet(rng, g, 8);
    const auto c = RandomSet(rng, g, 8);
    const double ab = ns::Hausdorff(a, b, g);
    CHECK(ab == doctest::Approx(NaiveHausdorff(a, b, g)).epsilon(1e-12));
    CHECK(ab == ns::Hausdorff(b, a, g));
    CHECK(ab <= ns::Hausdorff(a, c, g) + ns::Hausdorff(c, b, g) + 1e-12);
    CHECK((ab == 0.0) == (a == b));
  }
}

TEST_CASE("sum-of-players metric") {
  const auto g = UnitSquare(11);
  CHECK(g.ProfileDistance(At(g, 0, 0), At(g, 1, 1), ns::Metric::kSumOfPlayers) ==
        doctest::Approx(2.0));
  CHECK(g.ProfileDistance(At(g, 0, 0), At(g, 1, 1)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("contains within") {
  const auto g = UnitSquare(101);
  const ns::ProfileSet a(g, {At(g, 0, 0)});
  const ns::ProfileSet b(g, {At(g, 0.01, 0)});
  CHECK(ns::ContainsWithin(a, a, 0.0, g));
  CHECK(ns::ContainsWithin(a, b, 0.02, g));
  CHECK_FALSE(ns::ContainsWithin(a, b, 0.005, g));
  CHECK_FALSE(ns::ContainsWithin(a, ns::ProfileSet(g, {}), 5.0, g));
  CHECK(ns::ContainmentWitness(a, b, 0.005, g) == At(g, 0, 0));
  CHECK(ns::ContainmentWitness(a, b, 0.02, g) == -1);
}

TEST_CASE("contains within zero is index inclusion") {
  std::mt19937_64 rng(5);
  const auto g = UnitSquare(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = RandomSet(rng, g, 4);
    const auto b = RandomSet(rng, g, 20);
    CHECK(ns::ContainsWithin(a, b, 0.0, g) == a.IsSubsetOf(b));
  }
}

TEST_CASE("dilation agrees with distance to set") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const int players = 1 + trial % 3;
    const auto g = ns::BuildGrid(ns::GridSpec::Uniform(players, 0, 1, players == 3 ? 5 : 9));
    const auto s = RandomSet(rng, g, 5);
    const double delta = (rng() % 8) * 0.0625;
    const auto d = ns::DilateProfiles(s, delta, g);
    for (std::int64_t p = 0; p < g.size(); ++p) {
      CHECK(d.contains(p) == (ns::DistanceToSet(p, s, g) <= delta));
    }
  }
}

TEST_CASE("set construction is order independent") {
  const auto g = UnitSquare(5);
  std::vector<std::int64_t> idx = {7, 3, 3, 24, 0, 11};
  const ns::ProfileSet a(g, idx);
  std::reverse(idx.begin(), idx.end());
  const ns::ProfileSet b(g, idx);
  CHECK(a == b);
  CHECK(a.indices() == std::vector<std::int64_t>{0, 3, 7, 11, 24});
  CHECK_THROWS(ns::ProfileSet(g, {25}));
  CHECK(a.Intersect(ns::ProfileSet(g, {3, 4})).indices() == std::vector<std::int64_t>{3});
  CHECK(a.Union(ns::ProfileSet(g, {4})).size() == 6);
}

TEST_CASE("profile csv format") {
  const auto g = UnitSquare(3);
  std::ostringstream os;
  ns::WriteProfileCsv(os, ns::ProfileSet(g, {0, 8}), g);
  CHECK(os.str() == "profile_index,y_1_1,y_2_1\n0,0,0\n8,1,1\n");
  CHECK(ns::FormatDouble(0.1) == "0.10000000000000001");
}
