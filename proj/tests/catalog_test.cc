#include <cmath>
#include <random>

#include "doctest.h"
#include "nash_sens/catalog.h"
#include "nash_sens/equilibrium.h"
#include "nash_sens/errors.h"

namespace ns = nash_sens;

namespace {

// Continuum membership in the open approximate set, straight from the
// payoffs: f_i(y) > v_i(y) - eps with v_1 = m(2 x y2 - m), m = min(x y2, 1),
// and v_2 = y1^2.
bool InApproxSet(double x, double eps, double y1, double y2) {
  const double m = std::min(x * y2, 1.0);
  const double v1 = m * (2 * x * y2 - m);
  const double f1 = -y1 * (y1 - 2 * x * y2);
  const double f2 = -y2 * (y2 - 2 * y1);
  return f1 > v1 - eps && f2 > y1 * y1 - eps;
}

// Continuum Nash set: y1 = min(x y2, 1) and y2 = y1.
bool InNashSet(double x, double y1, double y2) {
  return std::abs(y1 - std::min(x * y2, 1.0)) < 1e-12 && std::abs(y2 - y1) < 1e-12;
}

}  // namespace

TEST_CASE("motivating game spec") {
  const auto g = ns::MotivatingGame();
  CHECK(g.name == "motivating");
  CHECK(g.num_players() == 2);
  CHECK(g.param_lo == std::vector<double>{0.0});
  CHECK(g.param_hi == std::vector<double>{2.0});
  REQUIRE(g.payoff_bound.has_value());
  // |f_i| on the box: f_1 reaches -y1^2 + 2 x y1 y2 <= 3 at x = 2.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 1000; ++k) {
    const double x = 2 * u(rng);
    const ns::StrategyProfile y{{u(rng)}, {u(rng)}};
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(ns::Payoff(g, ns::PlayerId(i), {x}, y)) <= *g.payoff_bound);
    }
  }
}

TEST_CASE("oracle h") {
  const auto low = ns::OracleH(0.5);
  CHECK(low.Contains(0, 0));
  CHECK_FALSE(low.Contains(0.3, 0.3));
  const auto mid = ns::OracleH(1.0);
  CHECK(mid.Contains(0.42, 0.42));
  CHECK_FALSE(mid.Contains(0.42, 0.43));
  const auto high = ns::OracleH(2.0);
  CHECK(high.Contains(0, 0));
  CHECK(high.Contains(1, 1));
  CHECK_FALSE(high.Contains(0.5, 0.5));
  CHECK_THROWS_AS(ns::OracleH(-0.1), ns::DomainError);
  CHECK_THROWS_AS(ns::OracleH(2.1), ns::DomainError);
}

TEST_CASE("oracle h agrees with the fixed-point condition") {
  const auto g = ns::BuildGrid(ns::GridSpec::Uniform(2, 0, 1, 41));
  for (double x : {0.0, 0.4, 0.99, 1.0, 1.01, 1.6, 2.0}) {
    const auto oracle = ns::OracleH(x);
    for (std::int64_t p = 0; p < g.size(); ++p) {
      const auto y = g.Profile(p);
      CHECK(oracle.Contains(y.scalar(0), y.scalar(1)) == InNashSet(x, y.scalar(0), y.scalar(1)));
    }
  }
}

TEST_CASE("oracle h eps regions") {
  const auto at1 = ns::OracleHEps(1.0, 0.01);
  for (const auto& r : at1.regions) CHECK(r.label != ns::RegionLabel::kB1);
  const ns::RegionDescriptor b1{ns::RegionLabel::kB1, 1.0, 0.01, {}};
  const ns::RegionDescriptor a1{ns::RegionLabel::kA, 1.0, 0.01, {}};
  const auto g = ns::BuildGrid(ns::GridSpec::Uniform(2, 0, 1, 101));
  int b1_hits = 0;
  for (std::int64_t p = 0; p < g.size(); ++p) {
    const auto y = g.Profile(p);
    b1_hits += b1.Contains(y.scalar(0), y.scalar(1));
    CHECK(at1.Contains(y.scalar(0), y.scalar(1)) == a1.Contains(y.scalar(0), y.scalar(1)));
  }
  CHECK(b1_hits == 0);

  CHECK(1.0 / (1 - 2 * std::sqrt(0.01)) == doctest::Approx(1.25));
  for (double x : {1.25, 1.4, 2.0}) {
    const ns::RegionDescriptor b2{ns::RegionLabel::kB2, x, 0.01, {}};
    int hits = 0;
    for (std::int64_t p = 0; p < g.size(); ++p) {
      const auto y = g.Profile(p);
      hits += b2.Contains(y.scalar(0), y.scalar(1));
    }
    CHECK(hits == 0);
  }

  std::vector<ns::RegionLabel> labels;
  for (const auto& r : ns::OracleHEps(1.2, 0.01).regions) labels.push_back(r.label);
  CHECK(labels == std::vector<ns::RegionLabel>{ns::RegionLabel::kA, ns::RegionLabel::kB1});
  CHECK(ns::RegimeBoundary(0.01) == doctest::Approx(1.2469).epsilon(1e-4));

  CHECK_THROWS_AS(ns::OracleHEps(1.0, 0.0), ns::DomainError);
  CHECK_THROWS_AS(ns::OracleHEps(1.0, 0.25), ns::DomainError);
  CHECK_THROWS_AS(ns::OracleHEps(2.5, 0.01), ns::DomainError);
}

TEST_CASE("region formulas agree with the payoff definition away from edges") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (double x : {0.3, 0.5, 0.9, 1.0, 1.05, 1.2, 1.3, 1.5, 1.9}) {
    for (double eps : {0.001, 0.01, 0.04, 0.1}) {
      const auto oracle = ns::OracleHEps(x, eps);
      int checked = 0, mismatched = 0;
      for (int k = 0; k < 3000; ++k) {
        const double y1 = u(rng), y2 = u(rng);
        if (oracle.NearBoundary(y1, y2, 1e-6)) continue;
        ++checked;
        mismatched += oracle.Contains(y1, y2) != InApproxSet(x, eps, y1, y2);
      }
      CHECK(checked > 2000);
      CHECK(mismatched == 0);
    }
  }
}

TEST_CASE("oracle h eps is monotone in eps") {
  const auto g = ns::BuildGrid(ns::GridSpec::Uniform(2, 0, 1, 101));
  for (double x : {0.5, 1.0, 1.2, 1.3, 1.8}) {
    const double eps[] = {0.005, 0.01, 0.04, 0.09, 0.2};
    for (int k = 0; k + 1 < 5; ++k) {
      const auto small = ns::OracleHEps(x, eps[k]);
      const auto large = ns::OracleHEps(x, eps[k + 1]);
      for (std::int64_t p = 0; p < g.size(); ++p) {
        const auto y = g.Profile(p);
        if (small.Contains(y.scalar(0), y.scalar(1))) {
          CHECK(large.Contains(y.scalar(0), y.scalar(1)));
        }
      }
    }
  }
}

TEST_CASE("random quadratic games") {
  const auto a = ns::RandomQuadraticGame(42, 3, 2);
  const auto b = ns::RandomQuadraticGame(42, 3, 2);
  const auto c = ns::RandomQuadraticGame(43, 3, 2);
  const ns::StrategyProfile y{{0.1, 0.9}, {0.4, 0.3}, {0.7, 0.2}};
  bool differs = false;
  for (int i = 0; i < 3; ++i) {
    const double va = ns::Payoff(a, ns::PlayerId(i), {1.3}, y);
    CHECK(va == ns::Payoff(b, ns::PlayerId(i), {1.3}, y));
    differs = differs || va != ns::Payoff(c, ns::PlayerId(i), {1.3}, y);
  }
  CHECK(differs);
  CHECK(a.name == "quadratic:42:3:2");

  const auto zero = ns::RandomQuadraticGame(1, 2, 1, 0.0);
  const auto g = ns::BuildGrid(zero.UniformGridSpec(9));
  CHECK(ns::NashSet(zero, {0.4}, g) == ns::ProfileSet::Full(g));

  CHECK_THROWS_AS(ns::RandomQuadraticGame(1, 2, 0), ns::ConfigError);
  CHECK_THROWS_AS(ns::RandomQuadraticGame(1, 0, 1), ns::ConfigError);
}

TEST_CASE("random quadratic sandwich") {
  for (std::uint64_t seed : {3u, 8u, 13u}) {
    const auto game = ns::RandomQuadraticGame(seed, 2, 1);
    const auto g = ns::BuildGrid(game.UniformGridSpec(21));
    for (double x : {0.2, 1.0, 1.9}) {
      CHECK(ns::VerifySandwich(game, {x}, ns::EpsilonTriple::PayoffOnly(0.03), g).all_hold());
    }
  }
}

TEST_CASE("game registry") {
  CHECK(ns::MakeGame("motivating").name == "motivating");
  CHECK(ns::MakeGame("quadratic:5:3:2").num_players() == 3);
  CHECK(ns::MakeGame("quadratic", 9).name == ns::RandomQuadraticGame(9, 2, 1).name);
  CHECK_THROWS_AS(ns::MakeGame("chess"), ns::ConfigError);
  CHECK_THROWS_AS(ns::MakeGame("quadratic:x:2:1"), ns::ConfigError);
}
