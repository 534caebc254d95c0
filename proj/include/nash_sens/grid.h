#ifndef NASH_SENS_GRID_H_
#define NASH_SENS_GRID_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "nash_sens/types.h"

namespace nash_sens {

struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
};

// Per-player list of axes. Player i's strategy box is the product of its
// axes; the profile grid is the product over players.
struct GridSpec {
  std::vector<std::vector<AxisSpec>> players;

  // Every player gets the same single axis [lo, hi] with `points` points.
  static GridSpec Uniform(int num_players, double lo, double hi, int points);
};

// Distance between profiles. kEuclidean is the Euclidean norm over all
// profile coordinates; kSumOfPlayers sums the per-player Euclidean
// distances.
enum class Metric { kEuclidean, kSumOfPlayers };

// Realized discretization. Player-local points are indexed row-major over
// the player's axes (last axis fastest). Profiles are indexed row-major over
// players, player 0 most significant, i.e. row-major over all axes
// concatenated. This index scheme is part of the CSV contract.
class Grid {
 public:
  int num_players() const { return static_cast<int>(players_.size()); }
  int num_axes(int player) const {
    return static_cast<int>(players_[player].axes.size());
  }
  const std::vector<double>& coords(int player, int axis) const {
    return players_[player].axes[axis].coords;
  }
  double spacing(int player, int axis) const {
    return players_[player].axes[axis].spacing;
  }
  double min_spacing() const { return min_spacing_; }

  std::int64_t player_size(int player) const { return players_[player].size; }
  std::int64_t size() const { return size_; }

  // Number of joint points of all players other than `player`.
  std::int64_t others_size(int player) const {
    return size_ / players_[player].size;
  }

  // Identity of the grid: equal for grids built from equal specs.
  std::uint64_t id() const { return id_; }
  const GridSpec& spec() const { return spec_; }

  std::int64_t LocalIndex(std::int64_t profile, int player) const {
    return (profile / player_stride_[player]) % players_[player].size;
  }
  std::int64_t ProfileIndex(std::span<const std::int64_t> locals) const;
  void Decompose(std::int64_t profile, std::span<std::int64_t> locals) const;

  // Index over the joint points of the other players (row-major, same order
  // as profiles with `player` removed) of a profile.
  std::int64_t OthersIndex(std::int64_t profile, int player) const;
  // Profile made of `local` for `player` and the others' point `others`.
  std::int64_t Combine(int player, std::int64_t local,
                       std::int64_t others) const;

  // Per-axis grid indices of a player-local point.
  void AxisIndices(int player, std::int64_t local,
                   std::span<std::int64_t> out) const;
  std::int64_t LocalFromAxes(int player,
                             std::span<const std::int64_t> axis_idx) const;

  void PlayerPoint(int player, std::int64_t local,
                   std::span<double> out) const;
  StrategyProfile Profile(std::int64_t profile) const;
  // Writes the coordinates of `profile` into an already-shaped profile.
  void FillProfile(std::int64_t profile, StrategyProfile& out) const;
  StrategyProfile EmptyProfile() const;

  // Euclidean distance between two local points of one player. Axis
  // differences are computed as |index difference| * spacing so that grid
  // distances are reproducible and symmetric.
  double PlayerDistance(int player, std::int64_t a, std::int64_t b) const;
  double ProfileDistance(std::int64_t a, std::int64_t b,
                         Metric metric = Metric::kEuclidean) const;

  // All axes of all players in profile-index order. The profile index is
  // sum_g axis_index_g * stride_g over these.
  struct FlatAxis {
    int player;
    int axis;
    std::int64_t size;
    std::int64_t stride;
    double spacing;
  };
  const std::vector<FlatAxis>& flat_axes() const { return flat_axes_; }

  // Nearest grid index on an axis, or -1 if the value is not within
  // 1e-9 * spacing of a grid coordinate.
  std::int64_t FindCoordinate(int player, int axis, double value) const;

 private:
  friend Grid BuildGrid(const GridSpec& spec);

  struct Axis {
    std::vector<double> coords;
    double spacing = 0.0;
  };
  struct PlayerAxes {
    std::vector<Axis> axes;
    std::vector<std::int64_t> axis_stride;
    std::int64_t size = 1;
  };

  GridSpec spec_;
  std::vector<PlayerAxes> players_;
  std::vector<std::int64_t> player_stride_;
  std::vector<FlatAxis> flat_axes_;
  std::int64_t size_ = 1;
  double min_spacing_ = 0.0;
  std::uint64_t id_ = 0;
};

// Realizes a spec. Endpoints are included exactly. Throws ConfigError when
// any axis has lo >= hi, fewer than 2 points, non-finite bounds, or when the
// product grid would exceed 2^40 profiles.
Grid BuildGrid(const GridSpec& spec);

// Sorted, duplicate-free set of player-local grid indices.
class PointSet {
 public:
  PointSet() = default;
  // Sorts and deduplicates.
  explicit PointSet(std::vector<std::int64_t> indices);

  const std::vector<std::int64_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::int64_t i) const;
  bool operator==(const PointSet&) const = default;

 private:
  std::vector<std::int64_t> indices_;
};

// Sorted, duplicate-free set of profile indices bound to one grid.
class ProfileSet {
 public:
  ProfileSet() = default;
  // Sorts and deduplicates. Throws DomainError on indices outside the grid.
  ProfileSet(const Grid& grid, std::vector<std::int64_t> indices);
  // Trusted constructor for already sorted, unique, in-range indices.
  static ProfileSet FromSorted(const Grid& grid,
                               std::vector<std::int64_t> indices);
  static ProfileSet Full(const Grid& grid);

  std::uint64_t grid_id() const { return grid_id_; }
  const std::vector<std::int64_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::int64_t profile) const;
  bool operator==(const ProfileSet&) const = default;

  ProfileSet Intersect(const ProfileSet& other) const;
  ProfileSet Union(const ProfileSet& other) const;
  bool IsSubsetOf(const ProfileSet& other) const;
  // Members of this set that are not in `other`.
  std::vector<std::int64_t> Minus(const ProfileSet& other) const;

 private:
  std::uint64_t grid_id_ = 0;
  std::vector<std::int64_t> indices_;
};

// Player-local grid points at distance < eps (<= eps when closed) from some
// member of `set`. Throws DomainError for an empty set or eps < 0.
PointSet BallDilate(const PointSet& set, double eps, const Grid& grid,
                    int player, bool closed);

// Profiles within `delta` (inclusive) of some member of `set`.
ProfileSet DilateProfiles(const ProfileSet& set, double delta,
                          const Grid& grid,
                          Metric metric = Metric::kEuclidean);

// Distance from one profile to the nearest member of `set`; +infinity for
// an empty set.
double DistanceToSet(std::int64_t profile, const ProfileSet& set,
                     const Grid& grid, Metric metric = Metric::kEuclidean);

// True iff some member of `set` lies within delta (inclusive) of profile.
bool WithinDistance(std::int64_t profile, const ProfileSet& set, double delta,
                    const Grid& grid, Metric metric = Metric::kEuclidean);

// sup over a of the distance to b.
double DirectedHausdorff(const ProfileSet& a, const ProfileSet& b,
                         const Grid& grid,
                         Metric metric = Metric::kEuclidean);

// Hausdorff distance. 0 when both sets are empty, +infinity when exactly
// one is. Throws DomainError when either set belongs to another grid.
double Hausdorff(const ProfileSet& a, const ProfileSet& b, const Grid& grid,
                 Metric metric = Metric::kEuclidean);

// True iff every member of a lies within delta (inclusive) of b.
bool ContainsWithin(const ProfileSet& a, const ProfileSet& b, double delta,
                    const Grid& grid, Metric metric = Metric::kEuclidean);

// First member of a farther than delta from b, or -1.
std::int64_t ContainmentWitness(const ProfileSet& a, const ProfileSet& b,
                                double delta, const Grid& grid,
                                Metric metric = Metric::kEuclidean);

// CSV rows "profile_index,y_1_1,...,y_n_k" in ascending index order, with a
// header line. Values are printed with 17 significant digits.
void WriteProfileCsv(std::ostream& os, const ProfileSet& set,
                     const Grid& grid);

// Formats a double with 17 significant digits ("%.17g").
std::string FormatDouble(double v);

}  // namespace nash_sens

#endif  // NASH_SENS_GRID_H_
