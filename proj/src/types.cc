#include "nash_sens/types.h"

namespace nash_sens {

StrategyProfile::StrategyProfile(const std::vector<int>& dims_per_player) {
  for (int d : dims_per_player) offsets_.push_back(offsets_.back() + d);
  coords_.assign(offsets_.back(), 0.0);
}

StrategyProfile::StrategyProfile(
    std::initializer_list<std::vector<double>> players) {
  for (const auto& p : players) {
    coords_.insert(coords_.end(), p.begin(), p.end());
    offsets_.push_back(static_cast<int>(coords_.size()));
  }
}

}  // namespace nash_sens
