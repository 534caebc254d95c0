#ifndef NASH_SENS_GAME_H_
#define NASH_SENS_GAME_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nash_sens/grid.h"
#include "nash_sens/types.h"

namespace nash_sens {

inline constexpr double kDefaultTieTol = 1e-9;

// Approximation vector (eps1, eps2, eps3): payoff slack, truncation level
// and feasibility dilation radius. An empty optional disables the
// component (identity truncation, exact feasibility).
struct EpsilonTriple {
  double eps1 = 0.0;
  std::optional<double> eps2;
  std::optional<double> eps3;

  // (eps1, off, off).
  static EpsilonTriple PayoffOnly(double eps1) { return {eps1, {}, {}}; }

  // Every active component multiplied by `factor`.
  EpsilonTriple Scaled(double factor) const;

  // Throws DomainError unless eps1 > 0 and active eps2, eps3 are > 0.
  void Validate() const;

  std::string ToString() const;
  bool operator==(const EpsilonTriple&) const = default;
};

// f_i(x, y).
using PayoffFn =
    std::function<double(const ParameterPoint& x, const StrategyProfile& y)>;

// Membership of y.player(i) in F_i(x, y_{-i}); the predicate must only use
// the other players' components besides the candidate itself.
using FeasibilityFn =
    std::function<bool(const ParameterPoint& x, const StrategyProfile& y)>;

struct PlayerSpec {
  std::vector<double> lo;
  std::vector<double> hi;
  PayoffFn payoff;
  // Empty means F_i is the whole box.
  FeasibilityFn feasible;
};

// A parameterized game with box strategy spaces.
struct GameSpec {
  std::string name;
  std::vector<PlayerSpec> players;
  // Parameter box; empty vectors mean unbounded of dimension param_dim.
  std::vector<double> param_lo;
  std::vector<double> param_hi;
  int param_dim = 1;
  // Known bound |f_i| <= payoff_bound, if any.
  std::optional<double> payoff_bound;

  int num_players() const { return static_cast<int>(players.size()); }

  // Throws DomainError if x has the wrong dimension, is not finite, or lies
  // outside the parameter box.
  void CheckParameter(const ParameterPoint& x) const;
  // Throws DomainError if y is misshaped or outside the strategy boxes.
  void CheckProfile(const StrategyProfile& y) const;
  // Throws DomainError if the grid does not span exactly the game's boxes.
  void CheckGrid(const Grid& grid) const;

  // Same number of points on every axis of every player.
  GridSpec UniformGridSpec(int points) const;
};

double Payoff(const GameSpec& game, PlayerId i, const ParameterPoint& x,
              const StrategyProfile& y);

// Clamp to [-1/eps2, 1/eps2]; identity when eps2 is disabled.
double TruncatePayoff(double value, std::optional<double> eps2);

// Player i's grid points feasible against y_{-i}. Throws
// InfeasibilityError when there are none.
PointSet FeasiblePoints(const GameSpec& game, PlayerId i,
                        const ParameterPoint& x, const StrategyProfile& y,
                        const Grid& grid);

// Max of the truncated payoff over player i's feasible grid points.
double ValueEps(const GameSpec& game, PlayerId i, const ParameterPoint& x,
                const StrategyProfile& y, std::optional<double> eps2,
                const Grid& grid);

// Feasible grid points whose payoff is within tie_tol of the feasible grid
// maximum.
PointSet BestResponse(const GameSpec& game, PlayerId i,
                      const ParameterPoint& x, const StrategyProfile& y,
                      const Grid& grid, double tie_tol = kDefaultTieTol);

// Grid points y_i* with f^eps2(y_i*, y_{-i}) > v^eps2 - eps1 and within
// eps3 of the feasible set. The closed variant uses >= and <= instead.
PointSet EpsBestResponse(const GameSpec& game, PlayerId i,
                         const ParameterPoint& x, const StrategyProfile& y,
                         const EpsilonTriple& eps, const Grid& grid,
                         bool closed);

// Payoffs of every grid candidate of one player against fixed opponents.
// This is the shared kernel behind the response operations above and the
// equilibrium enumeration.
struct ResponseRow {
  int player = 0;
  std::vector<double> payoff;
  std::vector<std::int64_t> feasible;  // sorted local indices
  bool all_feasible = true;
};

// `y` supplies the opponents; its player-i slot is overwritten.
ResponseRow EvaluateResponses(const GameSpec& game, int player,
                              const ParameterPoint& x, StrategyProfile& y,
                              const Grid& grid);

double RowValue(const ResponseRow& row, std::optional<double> eps2);

// Writes 0/1 membership for every local point of the player into `mask`.
void SelectBestResponse(const ResponseRow& row, double tie_tol,
                        std::span<char> mask);
void SelectEpsResponse(const ResponseRow& row, const EpsilonTriple& eps,
                       bool closed, const Grid& grid, std::span<char> mask);

}  // namespace nash_sens

#endif  // NASH_SENS_GAME_H_
