#include "nash_sens/equilibrium.h"

#include <algorithm>
#include <functional>

#include "nash_sens/errors.h"
#include "nash_sens/parallel.h"

namespace nash_sens {

EpsilonSchedule EpsilonSchedule::Geometric(const EpsilonTriple& eps0,
                                           int count) {
  EpsilonSchedule s;
  double factor = 1.0;
  for (int k = 0; k < count; ++k) {
    s.steps.push_back(eps0.Scaled(factor));
    factor *= 0.5;
  }
  return s;
}

EpsilonSchedule EpsilonSchedule::PayoffOnly(const std::vector<double>& eps1) {
  EpsilonSchedule s;
  for (double e : eps1) s.steps.push_back(EpsilonTriple::PayoffOnly(e));
  return s;
}

void EpsilonSchedule::Validate() const {
  if (steps.empty()) throw DomainError("epsilon schedule is empty");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    steps[k].Validate();
    if (k == 0) continue;
    const auto& a = steps[k - 1];
    const auto& b = steps[k];
    auto shrinks = [](const std::optional<double>& prev,
                      const std::optional<double>& next) {
      if (prev.has_value() != next.has_value()) return false;
      return !prev || *next < *prev;
    };
    if (!(b.eps1 < a.eps1) || !shrinks(a.eps2, b.eps2) ||
        !shrinks(a.eps3, b.eps3)) {
      throw DomainError("epsilon schedule must decrease strictly in every "
                        "active component (step " + std::to_string(k) + ")");
    }
  }
}

namespace {

using RowSelector =
    std::function<void(const ResponseRow& row, std::span<char> mask)>;

// Membership table of one player's response correspondence: entry
// [others * player_size + local] is 1 iff `local` responds to `others`.
std::vector<char> ResponseTable(const GameSpec& game, int player,
                                const ParameterPoint& x, const Grid& grid,
                                const RowSelector& select) {
  const std::int64_t rows = grid.others_size(player);
  const std::int64_t width = grid.player_size(player);
  std::vector<char> table(static_cast<std::size_t>(rows * width));
  const std::int64_t grain = std::max<std::int64_t>(1, 4096 / width);
  ParallelChunks(rows, grain,
                 [&](std::int64_t, std::int64_t begin, std::int64_t end) {
                   StrategyProfile y = grid.EmptyProfile();
                   for (std::int64_t o = begin; o < end; ++o) {
                     grid.FillProfile(grid.Combine(player, 0, o), y);
                     const ResponseRow row =
                         EvaluateResponses(game, player, x, y, grid);
                     select(row, std::span<char>(table.data() + o * width,
                                                 width));
                   }
                 });
  return table;
}

ProfileSet FixedPoints(const GameSpec& game, const ParameterPoint& x,
                       const Grid& grid, const RowSelector& select) {
  game.CheckParameter(x);
  game.CheckGrid(grid);
  const int n = game.num_players();
  std::vector<std::vector<char>> tables;
  tables.reserve(n);
  for (int i = 0; i < n; ++i) {
    tables.push_back(ResponseTable(game, i, x, grid, select));
  }
  const std::int64_t grain = 1 << 16;
  std::vector<std::vector<std::int64_t>> found(NumChunks(grid.size(), grain));
  ParallelChunks(grid.size(), grain,
                 [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                   auto& out = found[c];
                   for (std::int64_t p = begin; p < end; ++p) {
                     bool fixed = true;
                     for (int i = 0; i < n && fixed; ++i) {
                       const std::int64_t cell =
                           grid.OthersIndex(p, i) * grid.player_size(i) +
                           grid.LocalIndex(p, i);
                       fixed = tables[i][cell] != 0;
                     }
                     if (fixed) out.push_back(p);
                   }
                 });
  std::vector<std::int64_t> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  return ProfileSet::FromSorted(grid, std::move(all));
}

}  // namespace

ProfileSet NashSet(const GameSpec& game, const ParameterPoint& x,
                   const Grid& grid, double tie_tol) {
  if (!(tie_tol >= 0)) throw DomainError("tie_tol must be nonnegative");
  return FixedPoints(game, x, grid,
                     [tie_tol](const ResponseRow& row, std::span<char> mask) {
                       SelectBestResponse(row, tie_tol, mask);
                     });
}

ProfileSet ApproxNashSet(const GameSpec& game, const ParameterPoint& x,
                         const EpsilonTriple& eps, const Grid& grid,
                         bool closed) {
  eps.Validate();
  return FixedPoints(
      game, x, grid,
      [&eps, &grid, closed](const ResponseRow& row, std::span<char> mask) {
        SelectEpsResponse(row, eps, closed, grid, mask);
      });
}

ProfileSet EpsIntersectionLimit(const GameSpec& game, const ParameterPoint& x,
                                const EpsilonSchedule& schedule,
                                const Grid& grid) {
  schedule.Validate();
  ProfileSet acc = ApproxNashSet(game, x, schedule.steps.front(), grid, false);
  for (std::size_t k = 1; k < schedule.steps.size(); ++k) {
    acc = acc.Intersect(ApproxNashSet(game, x, schedule.steps[k], grid, false));
  }
  return acc;
}

bool SandwichReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InclusionCheck& c) { return c.holds; });
}

namespace {

InclusionCheck CheckInclusion(std::string name, const ProfileSet& small,
                              const ProfileSet& large) {
  InclusionCheck c;
  c.name = std::move(name);
  c.witnesses = small.Minus(large);
  c.holds = c.witnesses.empty();
  return c;
}

}  // namespace

SandwichReport VerifySandwich(const GameSpec& game, const ParameterPoint& x,
                              const EpsilonTriple& eps, const Grid& grid,
                              double tie_tol) {
  eps.Validate();
  if (!(tie_tol >= 0 && tie_tol < eps.eps1)) {
    throw DomainError("VerifySandwich requires 0 <= tie_tol < eps1");
  }
  SandwichReport r;
  r.x = x;
  r.eps = eps;
  r.tie_tol = tie_tol;
  r.nash = NashSet(game, x, grid, tie_tol);
  r.approx_open = ApproxNashSet(game, x, eps, grid, false);
  r.approx_closed = ApproxNashSet(game, x, eps, grid, true);
  r.approx_double = ApproxNashSet(game, x, eps.Scaled(2.0), grid, false);
  r.checks[0] = CheckInclusion("nash_in_approx_open", r.nash, r.approx_open);
  r.checks[1] = CheckInclusion("approx_open_in_approx_closed", r.approx_open,
                               r.approx_closed);
  r.checks[2] = CheckInclusion("approx_closed_in_approx_double",
                               r.approx_closed, r.approx_double);
  return r;
}

nlohmann::json EpsilonToJson(const EpsilonTriple& eps) {
  nlohmann::json j;
  j["eps1"] = eps.eps1;
  j["eps2"] = eps.eps2 ? nlohmann::json(*eps.eps2) : nlohmann::json("off");
  j["eps3"] = eps.eps3 ? nlohmann::json(*eps.eps3) : nlohmann::json("off");
  return j;
}

nlohmann::json ToJson(const SandwichReport& r) {
  nlohmann::json j;
  j["kind"] = "sandwich";
  j["x"] = r.x.coords;
  j["eps"] = EpsilonToJson(r.eps);
  j["tie_tol"] = r.tie_tol;
  j["cardinalities"] = {{"nash", r.nash.size()},
                        {"approx_open", r.approx_open.size()},
                        {"approx_closed", r.approx_closed.size()},
                        {"approx_double", r.approx_double.size()}};
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"name", c.name}, {"holds", c.holds}, {"witnesses", c.witnesses}});
  }
  j["checks"] = checks;
  j["all_hold"] = r.all_hold();
  return j;
}

}  // namespace nash_sens
