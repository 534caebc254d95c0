#ifndef NASH_SENS_EQUILIBRIUM_H_
#define NASH_SENS_EQUILIBRIUM_H_

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "nash_sens/game.h"
#include "nash_sens/grid.h"

namespace nash_sens {

// Decreasing sequence of approximation vectors realizing eps -> 0.
struct EpsilonSchedule {
  std::vector<EpsilonTriple> steps;

  // eps_k = eps0 * 2^-k for k = 0..count-1.
  static EpsilonSchedule Geometric(const EpsilonTriple& eps0, int count = 6);
  // (eps1, off, off) for each listed eps1.
  static EpsilonSchedule PayoffOnly(const std::vector<double>& eps1);

  // Throws DomainError unless nonempty, every step valid, disabled
  // components stay disabled, and active components strictly decrease.
  void Validate() const;
};

// Profiles y with y_i in BestResponse(i, x, y) for every player, found by
// checking every profile of the grid. May be empty.
ProfileSet NashSet(const GameSpec& game, const ParameterPoint& x,
                   const Grid& grid, double tie_tol = kDefaultTieTol);

// Profiles y with y_i in EpsBestResponse(i, x, y, eps, closed) for every
// player.
ProfileSet ApproxNashSet(const GameSpec& game, const ParameterPoint& x,
                         const EpsilonTriple& eps, const Grid& grid,
                         bool closed);

// Intersection of the open approximate equilibrium sets over the schedule.
ProfileSet EpsIntersectionLimit(const GameSpec& game, const ParameterPoint& x,
                                const EpsilonSchedule& schedule,
                                const Grid& grid);

struct InclusionCheck {
  std::string name;
  bool holds = true;
  // Members of the smaller set missing from the larger one.
  std::vector<std::int64_t> witnesses;
};

// h ⊆ h^eps ⊆ closed h^eps ⊆ h^(2 eps), checked as exact index-set
// inclusions.
struct SandwichReport {
  ParameterPoint x;
  EpsilonTriple eps;
  double tie_tol = kDefaultTieTol;
  ProfileSet nash;
  ProfileSet approx_open;
  ProfileSet approx_closed;
  ProfileSet approx_double;
  std::array<InclusionCheck, 3> checks;

  bool all_hold() const;
};

// Throws DomainError unless tie_tol < eps.eps1.
SandwichReport VerifySandwich(const GameSpec& game, const ParameterPoint& x,
                              const EpsilonTriple& eps, const Grid& grid,
                              double tie_tol = kDefaultTieTol);

nlohmann::json EpsilonToJson(const EpsilonTriple& eps);
nlohmann::json ToJson(const SandwichReport& report);

}  // namespace nash_sens

#endif  // NASH_SENS_EQUILIBRIUM_H_
