#include <cmath>
#include <random>

#include "doctest.h"
#include "nash_sens/catalog.h"
#include "nash_sens/errors.h"
#include "nash_sens/game.h"

namespace ns = nash_sens;

namespace {

ns::Grid Axis(double step) {
  return ns::BuildGrid(ns::GridSpec::Uniform(2, 0, 1, static_cast<int>(std::lround(1 / step)) + 1));
}

std::vector<double> Coords(const ns::PointSet& s, const ns::Grid& g, int player) {
  std::vector<double> out;
  for (auto i : s.indices()) out.push_back(g.coords(player, 0)[i]);
  return out;
}

// Two scalar players on [0,1] with caller-supplied payoffs.
ns::GameSpec ScalarGame(ns::PayoffFn f1, ns::PayoffFn f2) {
  ns::GameSpec g;
  g.name = "scalar";
  g.players = {{{0.0}, {1.0}, std::move(f1), {}}, {{0.0}, {1.0}, std::move(f2), {}}};
  g.param_lo = {0.0};
  g.param_hi = {2.0};
  return g;
}

}  // namespace

TEST_CASE("payoff examples") {
  const auto game = ns::MotivatingGame();
  CHECK(ns::Payoff(game, ns::PlayerId(0), {0.5}, {{0.3}, {0.4}}) ==
        doctest::Approx(-0.3 * (0.3 - 2 * 0.5 * 0.4)));
  CHECK(ns::Payoff(game, ns::PlayerId(0), {0.5}, {{0.3}, {0.4}}) == doctest::Approx(0.03));
  CHECK(ns::Payoff(game, ns::PlayerId(1), {1.7}, {{0.0}, {0.0}}) == 0.0);
  CHECK(ns::Payoff(game, ns::PlayerId(0), {1.0}, {{1.0}, {1.0}}) == 1.0);
  CHECK_THROWS_AS(ns::Payoff(game, ns::PlayerId(0), {1.0}, {{1.5}, {0.0}}), ns::DomainError);
  CHECK_THROWS_AS(ns::Payoff(game, ns::PlayerId(0), {3.0}, {{0.5}, {0.0}}), ns::DomainError);
}

TEST_CASE("zero parameter kills the cross term") {
  const auto game = ns::MotivatingGame();
  for (double y1 : {0.0, 0.3, 1.0}) {
    for (double y2 : {0.0, 0.6, 1.0}) {
      CHECK(ns::Payoff(game, ns::PlayerId(0), {0.0}, {{y1}, {y2}}) == doctest::Approx(-y1 * y1));
    }
  }
}

TEST_CASE("truncate payoff") {
  CHECK(ns::TruncatePayoff(5.0, 0.1) == 5.0);
  CHECK(ns::TruncatePayoff(5.0, 0.5) == 2.0);
  CHECK(ns::TruncatePayoff(-5.0, 0.5) == -2.0);
  CHECK(ns::TruncatePayoff(-7.0, std::nullopt) == -7.0);
}

TEST_CASE("truncate payoff properties") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> v(-50, 50), e(0.01, 2);
  for (int k = 0; k < 2000; ++k) {
    const double value = v(rng), eps2 = e(rng);
    const double t = ns::TruncatePayoff(value, eps2);
    CHECK(std::abs(t) <= 1 / eps2);
    CHECK(ns::TruncatePayoff(t, eps2) == t);
    if (std::abs(value) <= 1 / eps2) CHECK(t == value);
  }
}

TEST_CASE("feasible points") {
  const auto g = Axis(0.25);
  const auto game = ns::MotivatingGame();
  CHECK(ns::FeasiblePoints(game, ns::PlayerId(0), {1.0}, {{0.0}, {0.3}}, g).size() == 5);

  auto capped = ScalarGame([](auto&, auto&) { return 0.0; }, [](auto&, auto&) { return 0.0; });
  capped.players[0].feasible = [](const ns::ParameterPoint&, const ns::StrategyProfile& y) {
    return y.scalar(0) <= y.scalar(1);
  };
  const auto pts = ns::FeasiblePoints(capped, ns::PlayerId(0), {1.0}, {{0.0}, {0.5}}, g);
  CHECK(Coords(pts, g, 0) == std::vector<double>{0, 0.25, 0.5});

  capped.players[1].feasible = [](auto&, auto&) { return false; };
  CHECK_THROWS_AS(ns::FeasiblePoints(capped, ns::PlayerId(1), {1.0}, {{0.0}, {0.5}}, g),
                  ns::InfeasibilityError);
}

TEST_CASE("value eps") {
  const auto game = ns::MotivatingGame();
  const auto g = Axis(0.01);
  // v_2 = y_1^2 and v_1 = (x y_2)^2 while x y_2 <= 1.
  CHECK(ns::ValueEps(game, ns::PlayerId(1), {0.8}, {{0.6}, {0.0}}, std::nullopt, g) ==
        doctest::Approx(0.36).epsilon(1e-4));
  CHECK(ns::ValueEps(game, ns::PlayerId(0), {0.5}, {{0.0}, {0.4}}, std::nullopt, g) ==
        doctest::Approx(0.04).epsilon(1e-4));
  const auto big = ScalarGame([](auto&, auto& y) { return 10 + y.scalar(0); },
                              [](auto&, auto&) { return 12.0; });
  CHECK(ns::ValueEps(big, ns::PlayerId(0), {1.0}, {{0.0}, {0.0}}, 0.5, g) == 2.0);
}

TEST_CASE("best response matches closed forms") {
  const auto game = ns::MotivatingGame();
  const auto g = Axis(0.01);
  CHECK(Coords(ns::BestResponse(game, ns::PlayerId(0), {0.5}, {{0.7}, {0.4}}, g), g, 0) ==
        std::vector<double>{g.coords(0, 0)[20]});
  CHECK(Coords(ns::BestResponse(game, ns::PlayerId(1), {0.5}, {{0.37}, {0.9}}, g), g, 1) ==
        std::vector<double>{g.coords(1, 0)[37]});
  // min(x y_2, 1) saturates at 1.
  CHECK(Coords(ns::BestResponse(game, ns::PlayerId(0), {1.8}, {{0.1}, {0.9}}, g), g, 0) ==
        std::vector<double>{1.0});
  const auto flat = ScalarGame([](auto&, auto&) { return 3.0; }, [](auto&, auto&) { return 3.0; });
  CHECK(ns::BestResponse(flat, ns::PlayerId(0), {1.0}, {{0.0}, {0.0}}, g).size() == 101);
}

TEST_CASE("best response on random grids") {
  // H_1 = min(x y_2, 1): every best response is a grid point nearest to it.
  const auto game = ns::MotivatingGame();
  std::mt19937_64 rng(4);
  const auto g = Axis(0.05);
  for (int k = 0; k < 300; ++k) {
    const double x = std::uniform_real_distribution<double>(0, 2)(rng);
    const double y2 = g.coords(1, 0)[rng() % 21];
    const double target = std::min(x * y2, 1.0);
    const auto br = ns::BestResponse(game, ns::PlayerId(0), {x}, {{0.0}, {y2}}, g);
    REQUIRE_FALSE(br.empty());
    double nearest = 1e9;
    for (double c : g.coords(0, 0)) nearest = std::min(nearest, std::abs(c - target));
    for (double c : Coords(br, g, 0)) CHECK(std::abs(c - target) <= nearest + 1e-9);
  }
}

TEST_CASE("eps best response interval") {
  const auto game = ns::MotivatingGame();
  const auto g = Axis(0.001);
  const auto r = ns::EpsBestResponse(game, ns::PlayerId(1), {1.0}, {{0.5}, {0.0}},
                                     ns::EpsilonTriple::PayoffOnly(0.01), g, false);
  const auto c = Coords(r, g, 1);
  REQUIRE_FALSE(c.empty());
  CHECK(c.front() > 0.4);
  CHECK(c.front() < 0.4015);
  CHECK(c.back() < 0.6);
  CHECK(c.back() > 0.5985);
  // Every grid point strictly inside the interval is present.
  std::size_t inside = 0;
  for (double v : g.coords(1, 0)) inside += (v > 0.4 + 1e-12 && v < 0.6 - 1e-12);
  CHECK(c.size() == inside);
  CHECK(ns::EpsBestResponse(game, ns::PlayerId(1), {1.0}, {{0.5}, {0.0}},
                            ns::EpsilonTriple::PayoffOnly(100), g, false)
            .size() == 1001);
}

TEST_CASE("open and closed differ only on the boundary") {
  // Payoff -|y|: threshold max - eps1 is met with equality at y = eps1.
  const auto g = Axis(0.125);
  const auto game = ScalarGame([](auto&, auto& y) { return -y.scalar(0); },
                               [](auto&, auto&) { return 0.0; });
  const auto eps = ns::EpsilonTriple::PayoffOnly(0.25);
  const auto open = ns::EpsBestResponse(game, ns::PlayerId(0), {1.0}, {{0.0}, {0.0}}, eps, g, false);
  const auto closed = ns::EpsBestResponse(game, ns::PlayerId(0), {1.0}, {{0.0}, {0.0}}, eps, g, true);
  CHECK(Coords(open, g, 0) == std::vector<double>{0, 0.125});
  CHECK(Coords(closed, g, 0) == std::vector<double>{0, 0.125, 0.25});
}

TEST_CASE("feasibility ball widens the eps response") {
  auto game = ScalarGame([](auto&, auto& y) { return y.scalar(0); }, [](auto&, auto&) { return 0.0; });
  game.players[0].feasible = [](auto&, const ns::StrategyProfile& y) { return y.scalar(0) <= 0.5; };
  const auto g = Axis(0.125);
  auto eps = ns::EpsilonTriple::PayoffOnly(0.01);
  const auto plain = ns::EpsBestResponse(game, ns::PlayerId(0), {1.0}, {{0.0}, {0.0}}, eps, g, false);
  CHECK(Coords(plain, g, 0) == std::vector<double>{0.5});
  eps.eps3 = 0.2;
  // 0.625 lies within 0.2 of the feasible set and beats v - eps1.
  const auto wide = ns::EpsBestResponse(game, ns::PlayerId(0), {1.0}, {{0.0}, {0.0}}, eps, g, false);
  CHECK(Coords(wide, g, 0) == std::vector<double>{0.5, 0.625});
}

TEST_CASE("response inclusions and monotonicity") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const auto game = ns::RandomQuadraticGame(trial, 2, 1);
    const auto g = ns::BuildGrid(game.UniformGridSpec(15));
    const double x = std::uniform_real_distribution<double>(0, 2)(rng);
    const ns::StrategyProfile y{{g.coords(0, 0)[rng() % 15]}, {g.coords(1, 0)[rng() % 15]}};
    const double e1 = std::uniform_real_distribution<double>(0.001, 0.3)(rng);
    ns::EpsilonTriple eps = ns::EpsilonTriple::PayoffOnly(e1);
    if (trial % 2) eps.eps3 = 0.1;
    for (int i = 0; i < 2; ++i) {
      const ns::PlayerId p(i);
      auto subset = [](const ns::PointSet& a, const ns::PointSet& b) {
        for (auto v : a.indices()) if (!b.contains(v)) return false;
        return true;
      };
      const auto br = ns::BestResponse(game, p, {x}, y, g);
      const auto open = ns::EpsBestResponse(game, p, {x}, y, eps, g, false);
      const auto closed = ns::EpsBestResponse(game, p, {x}, y, eps, g, true);
      CHECK(subset(br, ns::FeasiblePoints(game, p, {x}, y, g)));
      CHECK(subset(br, open));
      CHECK(subset(open, closed));
      auto bigger = eps;
      bigger.eps1 *= 1.5;
      if (bigger.eps3) *bigger.eps3 *= 1.5;
      CHECK(subset(open, ns::EpsBestResponse(game, p, {x}, y, bigger, g, false)));
      // Pure: identical inputs give identical outputs.
      CHECK(open == ns::EpsBestResponse(game, p, {x}, y, eps, g, false));
    }
  }
}

TEST_CASE("epsilon triple validation") {
  CHECK_NOTHROW(ns::EpsilonTriple::PayoffOnly(0.1).Validate());
  CHECK_THROWS_AS(ns::EpsilonTriple::PayoffOnly(0.0).Validate(), ns::DomainError);
  CHECK_THROWS_AS((ns::EpsilonTriple{0.1, -1.0, std::nullopt}.Validate()), ns::DomainError);
  const auto s = ns::EpsilonTriple{0.1, 0.2, std::nullopt}.Scaled(2);
  CHECK(s.eps1 == doctest::Approx(0.2));
  CHECK(*s.eps2 == doctest::Approx(0.4));
  CHECK_FALSE(s.eps3.has_value());
}
