#include "nash_sens/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nash_sens/errors.h"

namespace nash_sens {

EpsilonTriple EpsilonTriple::Scaled(double factor) const {
  EpsilonTriple out = *this;
  out.eps1 *= factor;
  if (out.eps2) *out.eps2 *= factor;
  if (out.eps3) *out.eps3 *= factor;
  return out;
}

void EpsilonTriple::Validate() const {
  if (!(eps1 > 0) || !std::isfinite(eps1)) {
    throw DomainError("eps1 must be a positive finite number");
  }
  if (eps2 && !(*eps2 > 0 && std::isfinite(*eps2))) {
    throw DomainError("eps2 must be positive or disabled");
  }
  if (eps3 && !(*eps3 > 0 && std::isfinite(*eps3))) {
    throw DomainError("eps3 must be positive or disabled");
  }
}

std::string EpsilonTriple::ToString() const {
  std::ostringstream os;
  os << "(" << FormatDouble(eps1) << ", "
     << (eps2 ? FormatDouble(*eps2) : "off") << ", "
     << (eps3 ? FormatDouble(*eps3) : "off") << ")";
  return os.str();
}

void GameSpec::CheckParameter(const ParameterPoint& x) const {
  if (static_cast<int>(x.dim()) != param_dim) {
    throw DomainError("parameter has dimension " + std::to_string(x.dim()) +
                      ", game expects " + std::to_string(param_dim));
  }
  for (std::size_t k = 0; k < x.dim(); ++k) {
    if (!std::isfinite(x[k])) throw DomainError("parameter is not finite");
    if (!param_lo.empty() && (x[k] < param_lo[k] || x[k] > param_hi[k])) {
      throw DomainError("parameter " + FormatDouble(x[k]) +
                        " outside the parameter box of " + name);
    }
  }
}

void GameSpec::CheckProfile(const StrategyProfile& y) const {
  if (y.num_players() != num_players()) {
    throw DomainError("profile has the wrong number of players");
  }
  for (int i = 0; i < num_players(); ++i) {
    const auto& p = players[i];
    auto yi = y.player(i);
    if (yi.size() != p.lo.size()) {
      throw DomainError("profile component has the wrong dimension");
    }
    for (std::size_t k = 0; k < yi.size(); ++k) {
      if (!(yi[k] >= p.lo[k] && yi[k] <= p.hi[k])) {
        throw DomainError("profile outside the strategy box of player " +
                          std::to_string(i));
      }
    }
  }
}

void GameSpec::CheckGrid(const Grid& grid) const {
  if (grid.num_players() != num_players()) {
    throw DomainError("grid and game disagree on the number of players");
  }
  for (int i = 0; i < num_players(); ++i) {
    const auto& p = players[i];
    if (grid.num_axes(i) != static_cast<int>(p.lo.size())) {
      throw DomainError("grid and game disagree on player dimensions");
    }
    for (int a = 0; a < grid.num_axes(i); ++a) {
      const auto& c = grid.coords(i, a);
      if (c.front() != p.lo[a] || c.back() != p.hi[a]) {
        throw DomainError("grid does not span the strategy box of player " +
                          std::to_string(i));
      }
    }
  }
}

GridSpec GameSpec::UniformGridSpec(int points) const {
  GridSpec spec;
  for (const auto& p : players) {
    std::vector<AxisSpec> axes;
    for (std::size_t k = 0; k < p.lo.size(); ++k) {
      axes.push_back({p.lo[k], p.hi[k], points});
    }
    spec.players.push_back(std::move(axes));
  }
  return spec;
}

double Payoff(const GameSpec& game, PlayerId i, const ParameterPoint& x,
              const StrategyProfile& y) {
  if (i.index < 0 || i.index >= game.num_players()) {
    throw DomainError("player index out of range");
  }
  game.CheckParameter(x);
  game.CheckProfile(y);
  return game.players[i.index].payoff(x, y);
}

double TruncatePayoff(double value, std::optional<double> eps2) {
  if (!eps2) return value;
  const double bound = 1.0 / *eps2;
  return std::max(-bound, std::min(value, bound));
}

ResponseRow EvaluateResponses(const GameSpec& game, int player,
                              const ParameterPoint& x, StrategyProfile& y,
                              const Grid& grid) {
  const PlayerSpec& spec = game.players[player];
  const std::int64_t n = grid.player_size(player);
  ResponseRow row;
  row.player = player;
  row.payoff.resize(n);
  row.feasible.reserve(n);
  auto slot = y.mutable_player(player);
  for (std::int64_t k = 0; k < n; ++k) {
    grid.PlayerPoint(player, k, slot);
    row.payoff[k] = spec.payoff(x, y);
    if (!spec.feasible || spec.feasible(x, y)) row.feasible.push_back(k);
  }
  row.all_feasible = static_cast<std::int64_t>(row.feasible.size()) == n;
  if (row.feasible.empty()) {
    throw InfeasibilityError("player " + std::to_string(player) +
                             " has no feasible grid point at x = " +
                             FormatDouble(x.coords.empty() ? 0.0 : x[0]));
  }
  return row;
}

double RowValue(const ResponseRow& row, std::optional<double> eps2) {
  double v = -std::numeric_limits<double>::infinity();
  for (std::int64_t k : row.feasible) {
    v = std::max(v, TruncatePayoff(row.payoff[k], eps2));
  }
  return v;
}

void SelectBestResponse(const ResponseRow& row, double tie_tol,
                        std::span<char> mask) {
  std::fill(mask.begin(), mask.end(), 0);
  const double threshold = RowValue(row, std::nullopt) - tie_tol;
  for (std::int64_t k : row.feasible) {
    if (row.payoff[k] >= threshold) mask[k] = 1;
  }
}

void SelectEpsResponse(const ResponseRow& row, const EpsilonTriple& eps,
                       bool closed, const Grid& grid, std::span<char> mask) {
  const double threshold = RowValue(row, eps.eps2) - eps.eps1;
  const std::int64_t n = static_cast<std::int64_t>(row.payoff.size());
  std::fill(mask.begin(), mask.end(), 0);
  if (row.all_feasible) {
    for (std::int64_t k = 0; k < n; ++k) mask[k] = 1;
  } else if (!eps.eps3) {
    for (std::int64_t k : row.feasible) mask[k] = 1;
  } else {
    const PointSet ball = BallDilate(PointSet(row.feasible), *eps.eps3, grid,
                                     row.player, closed);
    for (std::int64_t k : ball.indices()) mask[k] = 1;
  }
  for (std::int64_t k = 0; k < n; ++k) {
    if (!mask[k]) continue;
    const double f = TruncatePayoff(row.payoff[k], eps.eps2);
    mask[k] = closed ? (f >= threshold) : (f > threshold);
  }
}

namespace {

void CheckCall(const GameSpec& game, PlayerId i, const ParameterPoint& x,
               const StrategyProfile& y, const Grid& grid) {
  if (i.index < 0 || i.index >= game.num_players()) {
    throw DomainError("player index out of range");
  }
  game.CheckParameter(x);
  game.CheckProfile(y);
  game.CheckGrid(grid);
}

PointSet MaskToSet(std::span<const char> mask) {
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k]) out.push_back(static_cast<std::int64_t>(k));
  }
  return PointSet(std::move(out));
}

}  // namespace

PointSet FeasiblePoints(const GameSpec& game, PlayerId i,
                        const ParameterPoint& x, const StrategyProfile& y,
                        const Grid& grid) {
  CheckCall(game, i, x, y, grid);
  StrategyProfile scratch = y;
  return PointSet(EvaluateResponses(game, i.index, x, scratch, grid).feasible);
}

double ValueEps(const GameSpec& game, PlayerId i, const ParameterPoint& x,
                const StrategyProfile& y, std::optional<double> eps2,
                const Grid& grid) {
  CheckCall(game, i, x, y, grid);
  StrategyProfile scratch = y;
  return RowValue(EvaluateResponses(game, i.index, x, scratch, grid), eps2);
}

PointSet BestResponse(const GameSpec& game, PlayerId i,
                      const ParameterPoint& x, const StrategyProfile& y,
                      const Grid& grid, double tie_tol) {
  CheckCall(game, i, x, y, grid);
  if (!(tie_tol >= 0)) throw DomainError("tie_tol must be nonnegative");
  StrategyProfile scratch = y;
  const ResponseRow row = EvaluateResponses(game, i.index, x, scratch, grid);
  std::vector<char> mask(row.payoff.size());
  SelectBestResponse(row, tie_tol, mask);
  return MaskToSet(mask);
}

PointSet EpsBestResponse(const GameSpec& game, PlayerId i,
                         const ParameterPoint& x, const StrategyProfile& y,
                         const EpsilonTriple& eps, const Grid& grid,
                         bool closed) {
  CheckCall(game, i, x, y, grid);
  eps.Validate();
  StrategyProfile scratch = y;
  const ResponseRow row = EvaluateResponses(game, i.index, x, scratch, grid);
  std::vector<char> mask(row.payoff.size());
  SelectEpsResponse(row, eps, closed, grid, mask);
  return MaskToSet(mask);
}

}  // namespace nash_sens
