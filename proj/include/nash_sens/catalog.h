#ifndef NASH_SENS_CATALOG_H_
#define NASH_SENS_CATALOG_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nash_sens/game.h"
#include "nash_sens/grid.h"

namespace nash_sens {

// Two players on [0,1], parameter x in [0,2]:
//   f_1(x, y) = -y_1 (y_1 - 2 x y_2),   f_2(x, y) = -y_2 (y_2 - 2 y_1).
// Best responses are min(x y_2, 1) and y_1.
GameSpec MotivatingGame();

enum class RegionLabel { kA, kB1, kB2, kC, kDiagonal, kPoints };

const char* RegionName(RegionLabel label);

// One closed-form piece of an equilibrium set of the motivating game.
struct RegionDescriptor {
  RegionLabel label = RegionLabel::kPoints;
  double x = 0.0;
  double eps = 0.0;
  std::vector<std::array<double, 2>> points;  // kPoints only

  bool Contains(double y1, double y2) const;
};

// Union of regions.
struct OracleSet {
  std::vector<RegionDescriptor> regions;

  bool Contains(double y1, double y2) const;

  // True if membership changes somewhere within Euclidean distance
  // `radius` of (y1, y2), restricted to [0,1]^2. Decided by sampling
  // concentric rings around the point.
  bool NearBoundary(double y1, double y2, double radius) const;

  // Grid profiles (of a two-player, one-axis grid) inside the set.
  ProfileSet Sample(const Grid& grid) const;
};

// Closed-form Nash set of the motivating game:
// {(0,0)} for x < 1, the diagonal for x = 1, {(0,0), (1,1)} for x > 1.
// Throws DomainError for x outside [0,2].
OracleSet OracleH(double x);

// Closed-form eps-approximate Nash set (eps1 = eps, eps2 = eps3 off):
// A for x <= 1, A u B1 below the regime boundary, A u B2 u C above it.
// Throws DomainError unless x in [0,2] and eps in (0, 1/4).
OracleSet OracleHEps(double x, double eps);

// (1 + eps) / (1 - sqrt(eps))^2, where B1 gives way to B2 u C.
double RegimeBoundary(double eps);

// Strictly concave quadratic game on [0,1]^dims boxes with scalar
// parameter x in [0,2]:
//   f_i(x, y) = -a_i |y_i|^2 + y_i . (b_i + x C_i y_{-i}),
// a_i in (0, r], entries of b_i and C_i in [-r, r], r = coeff_range.
// Deterministic in the seed. Throws ConfigError for nonpositive sizes or a
// negative range.
GameSpec RandomQuadraticGame(std::uint64_t seed, int players,
                             int dims_per_player, double coeff_range = 1.0);

// Registry: "motivating", "quadratic" (uses `seed`, 2 players, 1 dim) or
// "quadratic:<seed>:<players>:<dims>". Throws ConfigError otherwise.
GameSpec MakeGame(const std::string& name, std::uint64_t seed = 0);

}  // namespace nash_sens

#endif  // NASH_SENS_CATALOG_H_
