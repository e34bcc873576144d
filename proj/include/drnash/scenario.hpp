#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "drnash/errors.hpp"
#include "drnash/hourly_series.hpp"

namespace drnash {

/// Time-of-use retail tariff charged by the utility to inelastic loads.
struct TouTariff {
  HourlySeries retail_rate;  // $/kWh, > 0 at every hour

  bool operator==(const TouTariff&) const = default;
};

/// Static parameters of one PV prosumer (aggregated per bus).
struct ProsumerSpec {
  std::string id;
  double alpha = 0.0;           // DR sensitivity/willingness, in [0, 1]
  HourlySeries baseline_load;   // kW, desired consumption before DR
  HourlySeries pv_generation;   // kW
  HourlySeries pv_gen_cost;     // $/kWh, below the retail rate at every hour
  double dr_cap_fraction = 0.10;

  /// Maximum per-hour DR quantity: dr_cap_fraction times the peak baseline load.
  double dr_cap() const { return dr_cap_fraction * baseline_load.peak(); }

  bool operator==(const ProsumerSpec&) const = default;
};

/// Coefficients of the utility's quadratic operating-cost curve.
struct UtilityCostCoefficients {
  double c0 = 0.0;  // $
  double c1 = 0.0;  // $/kW
  double c2 = 0.0;  // $/kW^2, > 0

  bool operator==(const UtilityCostCoefficients&) const = default;
};

struct Scenario {
  int horizon = 24;
  TouTariff tariff;
  HourlySeries system_load;  // kW, covers all prosumers' baseline load
  std::vector<ProsumerSpec> prosumers;
  UtilityCostCoefficients utility_cost;
  std::vector<int> event_hours;  // sorted, unique, within [0, horizon)

  bool is_event_hour(int t) const {
    return std::binary_search(event_hours.begin(), event_hours.end(), t);
  }

  bool operator==(const Scenario&) const = default;
};

/// Collects every invariant violation in the scenario, one message per rule,
/// each naming the offending field. Empty means valid.
std::vector<std::string> validate(const Scenario& scenario);

/// Parses and validates a scenario file (JSON, documented schema; unknown
/// keys rejected). Throws FormatError on parse/shape problems and
/// ValidationError when an invariant is violated.
Scenario load_scenario(const std::filesystem::path& path);

/// Parses a scenario from JSON text. Same error contract as load_scenario.
Scenario parse_scenario(const std::string& json_text);

/// Serializes a scenario to the same JSON schema load_scenario reads.
/// Deterministic: identical scenarios produce identical text.
std::string scenario_to_json(const Scenario& scenario);

void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Built-in desk-scale replica of the two-prosumer case study: a residential
/// aggregate (17 x 6.2 kW PV) and one business building (200 kW PV),
/// alpha 0.8 / 0.9, utility cost coefficients (4207.5, -6.74, 0.0029),
/// 10% peak-load DR cap, event window 12:00-21:00. The headline constants
/// are fixed; tariff levels and the hourly load/PV shapes are documented
/// placeholders.
Scenario replica_scenario();

}  // namespace drnash
