#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace drnash {

/// Fixed-horizon per-hour series (kW, $/kWh or $ depending on context).
/// Length and sign invariants are enforced by scenario validation, not here.
class HourlySeries {
 public:
  HourlySeries() = default;
  explicit HourlySeries(std::vector<double> values) : values_(std::move(values)) {}

  static HourlySeries zeros(int horizon) {
    return HourlySeries(std::vector<double>(static_cast<std::size_t>(horizon), 0.0));
  }
  static HourlySeries constant(int horizon, double value) {
    return HourlySeries(std::vector<double>(static_cast<std::size_t>(horizon), value));
  }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int t) const { return values_[static_cast<std::size_t>(t)]; }
  double& operator[](int t) { return values_[static_cast<std::size_t>(t)]; }

  double peak() const {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
  }
  double total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

  const std::vector<double>& values() const { return values_; }

  bool operator==(const HourlySeries&) const = default;

 private:
  std::vector<double> values_;
};

}  // namespace drnash
