#ifndef NASH_SENS_TYPES_H_
#define NASH_SENS_TYPES_H_

#include <cstddef>
#include <span>
#include <vector>

namespace nash_sens {

struct PlayerId {
  int index = 0;
  constexpr explicit PlayerId(int i) : index(i) {}
};

// A point of the parameter space. Parameters are real vectors.
struct ParameterPoint {
  std::vector<double> coords;

  ParameterPoint() = default;
  ParameterPoint(std::initializer_list<double> c) : coords(c) {}
  explicit ParameterPoint(std::vector<double> c) : coords(std::move(c)) {}

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t k) const { return coords[k]; }
  bool operator==(const ParameterPoint&) const = default;
};

// A joint strategy y = (y_1, ..., y_n), stored as one flat coordinate vector
// with per-player offsets. Payoff evaluators read y.player(i).
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(const std::vector<int>& dims_per_player);
  StrategyProfile(std::initializer_list<std::vector<double>> players);

  int num_players() const { return static_cast<int>(offsets_.size()) - 1; }
  int dim(int player) const { return offsets_[player + 1] - offsets_[player]; }

  std::span<const double> player(int i) const {
    return {coords_.data() + offsets_[i], static_cast<std::size_t>(dim(i))};
  }
  std::span<double> mutable_player(int i) {
    return {coords_.data() + offsets_[i], static_cast<std::size_t>(dim(i))};
  }
  // Shorthand for one-dimensional strategy spaces.
  double scalar(int i) const { return coords_[offsets_[i]]; }

  const std::vector<double>& flat() const { return coords_; }
  bool operator==(const StrategyProfile&) const = default;

 private:
  std::vector<double> coords_;
  std::vector<int> offsets_{0};
};

}  // namespace nash_sens

#endif  // NASH_SENS_TYPES_H_
