#include "nash_sens/grid.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "nash_sens/errors.h"
#include "nash_sens/parallel.h"

namespace nash_sens {

GridSpec GridSpec::Uniform(int num_players, double lo, double hi,
                           int points) {
  GridSpec spec;
  spec.players.assign(num_players, {AxisSpec{lo, hi, points}});
  return spec;
}

namespace {

constexpr std::int64_t kMaxProfiles = std::int64_t{1} << 40;

void HashBytes(std::uint64_t& h, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) {
    h ^= (v >> (8 * b)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}

// Per-axis search radius, in grid steps, that covers every point within
// `delta` of a given point under either metric.
std::int64_t StepRadius(double delta, double spacing, std::int64_t points) {
  const double r = std::floor(delta / spacing) + 1.0;
  if (!(r < static_cast<double>(points))) return points - 1;
  return static_cast<std::int64_t>(r);
}

}  // namespace

Grid BuildGrid(const GridSpec& spec) {
  if (spec.players.empty()) throw ConfigError("grid: no players");
  Grid grid;
  grid.spec_ = spec;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  double min_spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.players.size(); ++i) {
    const auto& axes = spec.players[i];
    if (axes.empty()) {
      throw ConfigError("grid.players[" + std::to_string(i) + "]: no axes");
    }
    Grid::PlayerAxes pa;
    HashBytes(h, axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const AxisSpec& ax = axes[a];
      const std::string where = "grid.players[" + std::to_string(i) +
                                "].axes[" + std::to_string(a) + "]";
      if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi) || !(ax.lo < ax.hi)) {
        throw ConfigError(where + ": need finite lo < hi");
      }
      if (ax.points < 2) throw ConfigError(where + ": points must be >= 2");
      Grid::Axis axis;
      axis.spacing = (ax.hi - ax.lo) / (ax.points - 1);
      axis.coords.resize(ax.points);
      for (int k = 0; k < ax.points; ++k) {
        axis.coords[k] = ax.lo + k * axis.spacing;
      }
      axis.coords.back() = ax.hi;
      for (int k = 1; k < ax.points; ++k) {
        if (!(axis.coords[k] > axis.coords[k - 1])) {
          throw ConfigError(where + ": coordinates not strictly increasing");
        }
      }
      min_spacing = std::min(min_spacing, axis.spacing);
      HashBytes(h, std::bit_cast<std::uint64_t>(ax.lo));
      HashBytes(h, std::bit_cast<std::uint64_t>(ax.hi));
      HashBytes(h, static_cast<std::uint64_t>(ax.points));
      if (pa.size > kMaxProfiles / ax.points) {
        throw ConfigError(where + ": grid too large");
      }
      pa.size *= ax.points;
      pa.axes.push_back(std::move(axis));
    }
    pa.axis_stride.assign(pa.axes.size(), 1);
    for (int a = static_cast<int>(pa.axes.size()) - 2; a >= 0; --a) {
      pa.axis_stride[a] =
          pa.axis_stride[a + 1] *
          static_cast<std::int64_t>(pa.axes[a + 1].coords.size());
    }
    if (grid.size_ > kMaxProfiles / pa.size) {
      throw ConfigError("grid: product grid too large");
    }
    grid.size_ *= pa.size;
    grid.players_.push_back(std::move(pa));
  }
  const int n = grid.num_players();
  grid.player_stride_.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) {
    grid.player_stride_[i] =
        grid.player_stride_[i + 1] * grid.players_[i + 1].size;
  }
  for (int i = 0; i < n; ++i) {
    const auto& pa = grid.players_[i];
    for (std::size_t a = 0; a < pa.axes.size(); ++a) {
      grid.flat_axes_.push_back(
          {i, static_cast<int>(a),
           static_cast<std::int64_t>(pa.axes[a].coords.size()),
           grid.player_stride_[i] * pa.axis_stride[a], pa.axes[a].spacing});
    }
  }
  grid.min_spacing_ = min_spacing;
  grid.id_ = h;
  return grid;
}

std::int64_t Grid::ProfileIndex(std::span<const std::int64_t> locals) const {
  std::int64_t p = 0;
  for (int i = 0; i < num_players(); ++i) p += locals[i] * player_stride_[i];
  return p;
}

void Grid::Decompose(std::int64_t profile,
                     std::span<std::int64_t> locals) const {
  for (int i = 0; i < num_players(); ++i) {
    locals[i] = LocalIndex(profile, i);
  }
}

std::int64_t Grid::OthersIndex(std::int64_t profile, int player) const {
  const std::int64_t stride = player_stride_[player];
  const std::int64_t high = profile / (stride * players_[player].size);
  return high * stride + profile % stride;
}

std::int64_t Grid::Combine(int player, std::int64_t local,
                           std::int64_t others) const {
  const std::int64_t stride = player_stride_[player];
  const std::int64_t high = others / stride;
  const std::int64_t low = others % stride;
  return (high * players_[player].size + local) * stride + low;
}

void Grid::AxisIndices(int player, std::int64_t local,
                       std::span<std::int64_t> out) const {
  const auto& pa = players_[player];
  for (std::size_t a = 0; a < pa.axes.size(); ++a) {
    out[a] = (local / pa.axis_stride[a]) %
             static_cast<std::int64_t>(pa.axes[a].coords.size());
  }
}

std::int64_t Grid::LocalFromAxes(int player,
                                 std::span<const std::int64_t> idx) const {
  const auto& pa = players_[player];
  std::int64_t local = 0;
  for (std::size_t a = 0; a < pa.axes.size(); ++a) {
    local += idx[a] * pa.axis_stride[a];
  }
  return local;
}

void Grid::PlayerPoint(int player, std::int64_t local,
                       std::span<double> out) const {
  const auto& pa = players_[player];
  for (std::size_t a = 0; a < pa.axes.size(); ++a) {
    const auto& c = pa.axes[a].coords;
    out[a] = c[(local / pa.axis_stride[a]) % static_cast<std::int64_t>(c.size())];
  }
}

StrategyProfile Grid::EmptyProfile() const {
  std::vector<int> dims;
  for (const auto& pa : players_) dims.push_back(static_cast<int>(pa.axes.size()));
  return StrategyProfile(dims);
}

void Grid::FillProfile(std::int64_t profile, StrategyProfile& out) const {
  for (int i = 0; i < num_players(); ++i) {
    PlayerPoint(i, LocalIndex(profile, i), out.mutable_player(i));
  }
}

StrategyProfile Grid::Profile(std::int64_t profile) const {
  StrategyProfile y = EmptyProfile();
  FillProfile(profile, y);
  return y;
}

double Grid::PlayerDistance(int player, std::int64_t a,
                            std::int64_t b) const {
  const auto& pa = players_[player];
  if (pa.axes.size() == 1) {
    return static_cast<double>(a > b ? a - b : b - a) * pa.axes[0].spacing;
  }
  double s = 0.0;
  for (std::size_t k = 0; k < pa.axes.size(); ++k) {
    const std::int64_t n = static_cast<std::int64_t>(pa.axes[k].coords.size());
    const std::int64_t ia = (a / pa.axis_stride[k]) % n;
    const std::int64_t ib = (b / pa.axis_stride[k]) % n;
    const double d = static_cast<double>(ia > ib ? ia - ib : ib - ia) *
                     pa.axes[k].spacing;
    s += d * d;
  }
  return std::sqrt(s);
}

double Grid::ProfileDistance(std::int64_t a, std::int64_t b,
                             Metric metric) const {
  if (metric == Metric::kSumOfPlayers) {
    double s = 0.0;
    for (int i = 0; i < num_players(); ++i) {
      s += PlayerDistance(i, LocalIndex(a, i), LocalIndex(b, i));
    }
    return s;
  }
  double s = 0.0;
  for (int i = 0; i < num_players(); ++i) {
    const auto& pa = players_[i];
    const std::int64_t la = LocalIndex(a, i);
    const std::int64_t lb = LocalIndex(b, i);
    for (std::size_t k = 0; k < pa.axes.size(); ++k) {
      const std::int64_t n =
          static_cast<std::int64_t>(pa.axes[k].coords.size());
      const std::int64_t ia = (la / pa.axis_stride[k]) % n;
      const std::int64_t ib = (lb / pa.axis_stride[k]) % n;
      const double d = static_cast<double>(ia > ib ? ia - ib : ib - ia) *
                       pa.axes[k].spacing;
      s += d * d;
    }
  }
  return std::sqrt(s);
}

std::int64_t Grid::FindCoordinate(int player, int axis, double value) const {
  const auto& ax = players_[player].axes[axis];
  const double k = std::round((value - ax.coords.front()) / ax.spacing);
  if (!(k >= 0 && k < static_cast<double>(ax.coords.size()))) return -1;
  const auto idx = static_cast<std::int64_t>(k);
  if (std::abs(ax.coords[idx] - value) > 1e-9 * ax.spacing) return -1;
  return idx;
}

// ---------------------------------------------------------------------------

PointSet::PointSet(std::vector<std::int64_t> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
}

bool PointSet::contains(std::int64_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

ProfileSet::ProfileSet(const Grid& grid, std::vector<std::int64_t> indices)
    : grid_id_(grid.id()), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
  if (!indices_.empty() &&
      (indices_.front() < 0 || indices_.back() >= grid.size())) {
    throw DomainError("profile index outside grid");
  }
}

ProfileSet ProfileSet::FromSorted(const Grid& grid,
                                  std::vector<std::int64_t> indices) {
  ProfileSet s;
  s.grid_id_ = grid.id();
  s.indices_ = std::move(indices);
  return s;
}

ProfileSet ProfileSet::Full(const Grid& grid) {
  std::vector<std::int64_t> all(grid.size());
  for (std::int64_t p = 0; p < grid.size(); ++p) all[p] = p;
  return FromSorted(grid, std::move(all));
}

bool ProfileSet::contains(std::int64_t profile) const {
  return std::binary_search(indices_.begin(), indices_.end(), profile);
}

namespace {

void CheckSameGrid(std::uint64_t a, std::uint64_t b) {
  if (a != b) throw DomainError("profile sets reference different grids");
}

void CheckGrid(const ProfileSet& s, const Grid& grid) {
  if (s.grid_id() != grid.id()) {
    throw DomainError("profile set does not belong to this grid");
  }
}

}  // namespace

ProfileSet ProfileSet::Intersect(const ProfileSet& other) const {
  CheckSameGrid(grid_id_, other.grid_id_);
  ProfileSet out;
  out.grid_id_ = grid_id_;
  std::set_intersection(indices_.begin(), indices_.end(),
                        other.indices_.begin(), other.indices_.end(),
                        std::back_inserter(out.indices_));
  return out;
}

ProfileSet ProfileSet::Union(const ProfileSet& other) const {
  CheckSameGrid(grid_id_, other.grid_id_);
  ProfileSet out;
  out.grid_id_ = grid_id_;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(out.indices_));
  return out;
}

bool ProfileSet::IsSubsetOf(const ProfileSet& other) const {
  CheckSameGrid(grid_id_, other.grid_id_);
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

std::vector<std::int64_t> ProfileSet::Minus(const ProfileSet& other) const {
  CheckSameGrid(grid_id_, other.grid_id_);
  std::vector<std::int64_t> out;
  std::set_difference(indices_.begin(), indices_.end(),
                      other.indices_.begin(), other.indices_.end(),
                      std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------

PointSet BallDilate(const PointSet& set, double eps, const Grid& grid,
                    int player, bool closed) {
  if (set.empty()) throw DomainError("BallDilate: empty set");
  if (!(eps >= 0)) throw DomainError("BallDilate: negative radius");
  const int naxes = grid.num_axes(player);
  std::vector<std::int64_t> radius(naxes), n(naxes);
  for (int a = 0; a < naxes; ++a) {
    n[a] = static_cast<std::int64_t>(grid.coords(player, a).size());
    radius[a] = StepRadius(eps, grid.spacing(player, a), n[a]);
  }
  std::vector<char> in(grid.player_size(player), 0);
  std::vector<std::int64_t> center(naxes), lo(naxes), hi(naxes), cur(naxes);
  for (std::int64_t c : set.indices()) {
    grid.AxisIndices(player, c, center);
    for (int a = 0; a < naxes; ++a) {
      lo[a] = std::max<std::int64_t>(0, center[a] - radius[a]);
      hi[a] = std::min<std::int64_t>(n[a] - 1, center[a] + radius[a]);
      cur[a] = lo[a];
    }
    while (true) {
      const std::int64_t q = grid.LocalFromAxes(player, cur);
      if (!in[q]) {
        const double d = grid.PlayerDistance(player, c, q);
        if (closed ? d <= eps : d < eps) in[q] = 1;
      }
      int a = naxes - 1;
      while (a >= 0 && cur[a] == hi[a]) {
        cur[a] = lo[a];
        --a;
      }
      if (a < 0) break;
      ++cur[a];
    }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t q = 0; q < static_cast<std::int64_t>(in.size()); ++q) {
    if (in[q]) out.push_back(q);
  }
  return PointSet(std::move(out));
}

namespace {

// Enumerates grid profiles in the index box around `center` that may lie
// within `delta`, calling fn(q). Returns false if the box volume exceeds
// `budget` (nothing is enumerated then).
template <typename Fn>
bool ForEachInBox(const Grid& grid, std::int64_t center, double delta,
                  double budget, Fn&& fn) {
  const auto& axes = grid.flat_axes();
  const int m = static_cast<int>(axes.size());
  std::vector<std::int64_t> extent(m), cur(m, 0);
  double volume = 1.0;
  std::int64_t base = center;
  for (int g = 0; g < m; ++g) {
    const auto& ax = axes[g];
    const std::int64_t idx = (center / ax.stride) % ax.size;
    const std::int64_t r = StepRadius(delta, ax.spacing, ax.size);
    const std::int64_t lo = std::max<std::int64_t>(0, idx - r);
    const std::int64_t hi = std::min<std::int64_t>(ax.size - 1, idx + r);
    extent[g] = hi - lo;
    volume *= static_cast<double>(hi - lo + 1);
    base -= (idx - lo) * ax.stride;
  }
  if (volume > budget) return false;
  std::int64_t q = base;
  while (true) {
    fn(q);
    int g = m - 1;
    while (g >= 0 && cur[g] == extent[g]) {
      q -= cur[g] * axes[g].stride;
      cur[g] = 0;
      --g;
    }
    if (g < 0) break;
    ++cur[g];
    q += axes[g].stride;
  }
  return true;
}

// Min distance from p to the set, or a value < floor as soon as one is
// found (the caller only needs to know that p does not raise the maximum).
double NearestOrBelow(std::int64_t p, const ProfileSet& set, double floor,
                      const Grid& grid, Metric metric) {
  const auto& idx = set.indices();
  if (idx.empty()) return std::numeric_limits<double>::infinity();
  const auto pos = std::lower_bound(idx.begin(), idx.end(), p) - idx.begin();
  if (pos < static_cast<std::ptrdiff_t>(idx.size()) && idx[pos] == p) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::ptrdiff_t left = pos - 1;
  std::ptrdiff_t right = pos;
  const auto n = static_cast<std::ptrdiff_t>(idx.size());
  while (left >= 0 || right < n) {
    if (right < n) {
      best = std::min(best, grid.ProfileDistance(p, idx[right++], metric));
      if (best < floor) return best;
    }
    if (left >= 0) {
      best = std::min(best, grid.ProfileDistance(p, idx[left--], metric));
      if (best < floor) return best;
    }
  }
  return best;
}

}  // namespace

bool WithinDistance(std::int64_t p, const ProfileSet& set, double delta,
                    const Grid& grid, Metric metric) {
  if (set.empty()) return false;
  if (set.contains(p)) return delta >= 0;
  bool found = false;
  const auto& idx = set.indices();
  const bool boxed = ForEachInBox(
      grid, p, delta, static_cast<double>(set.size()), [&](std::int64_t q) {
        if (found) return;
        if (std::binary_search(idx.begin(), idx.end(), q) &&
            grid.ProfileDistance(p, q, metric) <= delta) {
          found = true;
        }
      });
  if (boxed) return found;
  for (std::int64_t q : idx) {
    if (grid.ProfileDistance(p, q, metric) <= delta) return true;
  }
  return false;
}

ProfileSet DilateProfiles(const ProfileSet& set, double delta,
                          const Grid& grid, Metric metric) {
  CheckGrid(set, grid);
  if (!(delta >= 0)) throw DomainError("DilateProfiles: negative radius");
  if (set.empty()) return set;
  std::vector<char> in(grid.size(), 0);
  bool all_boxed = true;
  for (std::int64_t c : set.indices()) {
    const bool boxed = ForEachInBox(
        grid, c, delta, static_cast<double>(grid.size()), [&](std::int64_t q) {
          if (!in[q] && grid.ProfileDistance(c, q, metric) <= delta) in[q] = 1;
        });
    if (!boxed) {
      all_boxed = false;
      break;
    }
  }
  std::vector<std::int64_t> out;
  if (all_boxed) {
    for (std::int64_t q = 0; q < grid.size(); ++q) {
      if (in[q]) out.push_back(q);
    }
  } else {
    for (std::int64_t q = 0; q < grid.size(); ++q) {
      if (WithinDistance(q, set, delta, grid, metric)) out.push_back(q);
    }
  }
  return ProfileSet::FromSorted(grid, std::move(out));
}

double DistanceToSet(std::int64_t profile, const ProfileSet& set,
                     const Grid& grid, Metric metric) {
  CheckGrid(set, grid);
  return NearestOrBelow(profile, set, -1.0, grid, metric);
}

double DirectedHausdorff(const ProfileSet& a, const ProfileSet& b,
                         const Grid& grid, Metric metric) {
  CheckGrid(a, grid);
  CheckGrid(b, grid);
  if (a.empty()) return 0.0;
  if (b.empty()) return std::numeric_limits<double>::infinity();
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  const std::int64_t grain = 256;
  std::vector<double> chunk_max(NumChunks(n, grain), 0.0);
  ParallelChunks(n, grain,
                 [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                   double cmax = 0.0;
                   for (std::int64_t k = begin; k < end; ++k) {
                     const double d = NearestOrBelow(a.indices()[k], b, cmax,
                                                     grid, metric);
                     cmax = std::max(cmax, d);
                   }
                   chunk_max[c] = cmax;
                 });
  return *std::max_element(chunk_max.begin(), chunk_max.end());
}

double Hausdorff(const ProfileSet& a, const ProfileSet& b, const Grid& grid,
                 Metric metric) {
  CheckSameGrid(a.grid_id(), b.grid_id());
  CheckGrid(a, grid);
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(DirectedHausdorff(a, b, grid, metric),
                  DirectedHausdorff(b, a, grid, metric));
}

std::int64_t ContainmentWitness(const ProfileSet& a, const ProfileSet& b,
                                double delta, const Grid& grid,
                                Metric metric) {
  CheckGrid(a, grid);
  CheckGrid(b, grid);
  for (std::int64_t p : a.indices()) {
    if (!WithinDistance(p, b, delta, grid, metric)) return p;
  }
  return -1;
}

bool ContainsWithin(const ProfileSet& a, const ProfileSet& b, double delta,
                    const Grid& grid, Metric metric) {
  return ContainmentWitness(a, b, delta, grid, metric) < 0;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void WriteProfileCsv(std::ostream& os, const ProfileSet& set,
                     const Grid& grid) {
  CheckGrid(set, grid);
  os << "profile_index";
  for (int i = 0; i < grid.num_players(); ++i) {
    for (int a = 0; a < grid.num_axes(i); ++a) {
      os << ",y_" << (i + 1) << "_" << (a + 1);
    }
  }
  os << "\n";
  StrategyProfile y = grid.EmptyProfile();
  for (std::int64_t p : set.indices()) {
    grid.FillProfile(p, y);
    os << p;
    for (double v : y.flat()) os << "," << FormatDouble(v);
    os << "\n";
  }
}

}  // namespace nash_sens
