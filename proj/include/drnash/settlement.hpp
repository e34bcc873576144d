#pragma once

#include <span>
#include <vector>

#include "drnash/hourly_series.hpp"
#include "drnash/state.hpp"

namespace drnash {

/// Hour-by-hour money flows for one state of the game.
struct SettlementReport {
  HourlySeries provider_profit;      // $
  HourlySeries utility_cost_before;  // $ at the desired system load
  HourlySeries utility_cost_after;   // $ at the adjusted load
  HourlySeries adjusted_load;        // kW, Q = P_system - sum PV - sum dr
  HourlySeries utility_profit;       // $ = cost_before - cost_after
  std::vector<HourlySeries> pv_payment;  // per prosumer: lambda_pv * surplus
  std::vector<HourlySeries> dr_payment;  // per prosumer: lambda_dr * surplus
};

/// Quadratic operating cost c0 + c1*load + c2*load^2.
double utility_cost(double load, const UtilityCostCoefficients& coeffs);

/// Cost reduction from the DR event: cost(p_system) - cost(Q) with
/// Q = p_system - total_pv - total_dr. Throws ValidationError when Q < 0.
double utility_profit(double p_system, double total_pv, double total_dr,
                      const UtilityCostCoefficients& coeffs);

/// DR provider margin for one hour: sum over prosumers of
/// (lambda_dr - lambda_pv) * (pv_gen - x). All spans range over prosumers.
double provider_profit(std::span<const double> lambda_dr, std::span<const double> lambda_pv,
                       std::span<const double> pv_gen, std::span<const double> x);

/// Full report for a state of the game.
SettlementReport settle(const Scenario& scenario, const Problem& problem, const GameState& state);

}  // namespace drnash
