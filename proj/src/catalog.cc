#include "nash_sens/catalog.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "nash_sens/errors.h"

namespace nash_sens {

GameSpec MotivatingGame() {
  GameSpec g;
  g.name = "motivating";
  g.param_dim = 1;
  g.param_lo = {0.0};
  g.param_hi = {2.0};
  // |f_1| <= 3 (y = (1,1), x = 2), |f_2| <= 1.
  g.payoff_bound = 3.0;
  PlayerSpec p1;
  p1.lo = {0.0};
  p1.hi = {1.0};
  p1.payoff = [](const ParameterPoint& x, const StrategyProfile& y) {
    const double y1 = y.scalar(0);
    return -y1 * (y1 - 2.0 * x[0] * y.scalar(1));
  };
  PlayerSpec p2;
  p2.lo = {0.0};
  p2.hi = {1.0};
  p2.payoff = [](const ParameterPoint&, const StrategyProfile& y) {
    const double y2 = y.scalar(1);
    return -y2 * (y2 - 2.0 * y.scalar(0));
  };
  g.players = {std::move(p1), std::move(p2)};
  return g;
}

const char* RegionName(RegionLabel label) {
  switch (label) {
    case RegionLabel::kA: return "A";
    case RegionLabel::kB1: return "B1";
    case RegionLabel::kB2: return "B2";
    case RegionLabel::kC: return "C";
    case RegionLabel::kDiagonal: return "DIAGONAL";
    case RegionLabel::kPoints: return "POINTS";
  }
  return "?";
}

double RegimeBoundary(double eps) {
  const double s = 1.0 - std::sqrt(eps);
  return (1.0 + eps) / (s * s);
}

namespace {

bool Open(double lo, double v, double hi) { return lo < v && v < hi; }

// Shared y_1 constraint of B1, B2 and C.
bool UpperBranchY1(double x, double eps, double y1, double y2) {
  const double s = std::sqrt(eps);
  const double t = x * y2 - 1.0;
  return Open(x * y2 - std::sqrt(t * t + eps), y1, y2 + s);
}

// Roots separating B2 and C on the y_2 axis; NaN when the discriminant is
// negative, which makes both regions empty.
void SplitRoots(double x, double eps, double& lower, double& upper) {
  const double s = std::sqrt(eps);
  const double q = (1.0 - s) * x + s;
  const double disc = q * q - (2.0 * x - 1.0);
  const double r = disc >= 0 ? std::sqrt(disc)
                             : std::numeric_limits<double>::quiet_NaN();
  lower = (q - r) / (2.0 * x - 1.0);
  upper = (q + r) / (2.0 * x - 1.0);
}

}  // namespace

bool RegionDescriptor::Contains(double y1, double y2) const {
  if (!(y1 >= 0 && y1 <= 1 && y2 >= 0 && y2 <= 1)) return false;
  const double s = std::sqrt(eps);
  switch (label) {
    case RegionLabel::kA: {
      // 1/0 = infinity at x = 1.
      const double y2_max = x == 1.0
                                ? std::numeric_limits<double>::infinity()
                                : 2.0 / std::abs(1.0 - x) * s;
      return Open(std::max(1.0, x) * y2 - s, y1, std::min(1.0, x) * y2 + s) &&
             y2 >= 0 && y2 < y2_max;
    }
    case RegionLabel::kB1:
      return UpperBranchY1(x, eps, y1, y2) && 1.0 / x < y2 && y2 <= 1.0;
    case RegionLabel::kB2: {
      double lower, upper;
      SplitRoots(x, eps, lower, upper);
      return UpperBranchY1(x, eps, y1, y2) && Open(1.0 / x, y2, lower);
    }
    case RegionLabel::kC: {
      double lower, upper;
      SplitRoots(x, eps, lower, upper);
      return UpperBranchY1(x, eps, y1, y2) && upper < y2 && y2 <= 1.0;
    }
    case RegionLabel::kDiagonal:
      return y1 == y2;
    case RegionLabel::kPoints:
      for (const auto& p : points) {
        if (p[0] == y1 && p[1] == y2) return true;
      }
      return false;
  }
  return false;
}

bool OracleSet::Contains(double y1, double y2) const {
  for (const auto& r : regions) {
    if (r.Contains(y1, y2)) return true;
  }
  return false;
}

bool OracleSet::NearBoundary(double y1, double y2, double radius) const {
  const bool inside = Contains(y1, y2);
  constexpr int kRings = 16;
  constexpr int kAngles = 64;
  for (int r = 1; r <= kRings; ++r) {
    const double rho = radius * r / kRings;
    for (int a = 0; a < kAngles; ++a) {
      const double t = 2.0 * std::numbers::pi * a / kAngles;
      const double p = y1 + rho * std::cos(t);
      const double q = y2 + rho * std::sin(t);
      if (p < 0 || p > 1 || q < 0 || q > 1) continue;
      if (Contains(p, q) != inside) return true;
    }
  }
  return false;
}

ProfileSet OracleSet::Sample(const Grid& grid) const {
  if (grid.num_players() != 2 || grid.num_axes(0) != 1 ||
      grid.num_axes(1) != 1) {
    throw DomainError("oracle sampling needs a two-player scalar grid");
  }
  const auto& c1 = grid.coords(0, 0);
  const auto& c2 = grid.coords(1, 0);
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    for (std::size_t j = 0; j < c2.size(); ++j) {
      if (Contains(c1[i], c2[j])) {
        out.push_back(static_cast<std::int64_t>(i * c2.size() + j));
      }
    }
  }
  return ProfileSet::FromSorted(grid, std::move(out));
}

OracleSet OracleH(double x) {
  if (!(x >= 0 && x <= 2)) throw DomainError("OracleH: x outside [0,2]");
  RegionDescriptor r;
  r.x = x;
  if (x < 1) {
    r.label = RegionLabel::kPoints;
    r.points = {{0.0, 0.0}};
  } else if (x == 1) {
    r.label = RegionLabel::kDiagonal;
  } else {
    r.label = RegionLabel::kPoints;
    r.points = {{0.0, 0.0}, {1.0, 1.0}};
  }
  return OracleSet{{r}};
}

OracleSet OracleHEps(double x, double eps) {
  if (!(x >= 0 && x <= 2)) throw DomainError("OracleHEps: x outside [0,2]");
  if (!(eps > 0 && eps < 0.25)) {
    throw DomainError("OracleHEps: eps outside (0, 1/4)");
  }
  auto region = [&](RegionLabel l) {
    RegionDescriptor r;
    r.label = l;
    r.x = x;
    r.eps = eps;
    return r;
  };
  OracleSet o;
  o.regions.push_back(region(RegionLabel::kA));
  if (x <= 1) return o;
  if (x < RegimeBoundary(eps)) {
    o.regions.push_back(region(RegionLabel::kB1));
  } else {
    o.regions.push_back(region(RegionLabel::kB2));
    o.regions.push_back(region(RegionLabel::kC));
  }
  return o;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; stable across standard
// libraries, unlike std::uniform_real_distribution.
double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

GameSpec RandomQuadraticGame(std::uint64_t seed, int players,
                             int dims_per_player, double coeff_range) {
  if (players < 1) throw ConfigError("quadratic game: players must be >= 1");
  if (dims_per_player < 1) {
    throw ConfigError("quadratic game: dims must be >= 1");
  }
  if (!(coeff_range >= 0) || !std::isfinite(coeff_range)) {
    throw ConfigError("quadratic game: coeff_range must be >= 0");
  }
  std::mt19937_64 rng(seed);
  const double r = coeff_range;
  const int d = dims_per_player;
  const int others_dim = (players - 1) * d;

  GameSpec g;
  std::ostringstream name;
  name << "quadratic:" << seed << ":" << players << ":" << d;
  g.name = name.str();
  g.param_dim = 1;
  g.param_lo = {0.0};
  g.param_hi = {2.0};
  // |y_i| <= sqrt(d), x <= 2.
  g.payoff_bound = r * (d + d + 2.0 * d * others_dim);

  for (int i = 0; i < players; ++i) {
    const double a = r * (0.1 + 0.9 * Unit(rng));
    std::vector<double> b(d);
    for (double& v : b) v = r * (2.0 * Unit(rng) - 1.0);
    // Row-major d x others_dim.
    std::vector<double> c(static_cast<std::size_t>(d) * others_dim);
    for (double& v : c) v = r * (2.0 * Unit(rng) - 1.0);

    PlayerSpec p;
    p.lo.assign(d, 0.0);
    p.hi.assign(d, 1.0);
    p.payoff = [i, a, b, c, d, others_dim](const ParameterPoint& x,
                                           const StrategyProfile& y) {
      auto yi = y.player(i);
      double value = 0.0;
      for (int k = 0; k < d; ++k) {
        double drift = 0.0;
        int col = 0;
        for (int j = 0; j < y.num_players(); ++j) {
          if (j == i) continue;
          for (double v : y.player(j)) {
            drift += c[static_cast<std::size_t>(k) * others_dim + col++] * v;
          }
        }
        value += yi[k] * (b[k] + x[0] * drift) - a * yi[k] * yi[k];
      }
      return value;
    };
    g.players.push_back(std::move(p));
  }
  return g;
}

GameSpec MakeGame(const std::string& name, std::uint64_t seed) {
  if (name == "motivating") return MotivatingGame();
  if (name == "quadratic") return RandomQuadraticGame(seed, 2, 1);
  const std::string prefix = "quadratic:";
  if (name.rfind(prefix, 0) == 0) {
    std::istringstream in(name.substr(prefix.size()));
    std::uint64_t s;
    int players, dims;
    char c1, c2;
    if (in >> s >> c1 >> players >> c2 >> dims && c1 == ':' && c2 == ':' &&
        in.peek() == std::char_traits<char>::eof()) {
      return RandomQuadraticGame(s, players, dims);
    }
    throw ConfigError("game: expected quadratic:<seed>:<players>:<dims>, got " +
                      name);
  }
  throw ConfigError("game: unknown game '" + name + "'");
}

}  // namespace nash_sens
