#pragma once

#include <vector>

#include "drnash/scenario.hpp"

namespace drnash {

/// Scenario data flattened into hour-major arrays (index = hour * n + i) so
/// the kernels can stream over prosumer-hour cells.
struct Problem {
  int n = 0;
  int horizon = 0;
  std::vector<double> baseline;     // horizon*n, kW
  std::vector<double> pv_gen;       // horizon*n, kW
  std::vector<double> pv_gen_cost;  // horizon*n, $/kWh
  std::vector<double> d_max;        // horizon*n, kW; 0 outside the event window
  std::vector<double> retail;       // horizon, $/kWh
  std::vector<double> alpha;        // n

  static Problem build(const Scenario& scenario);

  int cells() const { return horizon * n; }
  int idx(int t, int i) const { return t * n + i; }
};

/// Mutable per-iteration game variables, same hour-major layout as Problem.
struct GameState {
  int n = 0;
  int horizon = 0;
  std::vector<double> x;          // kW
  std::vector<double> dr;         // kW
  std::vector<double> sdr;        // dimensionless, +inf flags zero demand
  std::vector<double> lambda_pv;  // $/kWh
  std::vector<double> lambda_dr;  // $/kWh

  /// x = baseline, dr = 0, all prices 0.
  static GameState initial(const Problem& problem);

  int cells() const { return horizon * n; }
  int idx(int t, int i) const { return t * n + i; }

  bool operator==(const GameState&) const = default;
};

}  // namespace drnash
