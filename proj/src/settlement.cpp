#include "drnash/settlement.hpp"

#include <string>

#include "drnash/errors.hpp"

namespace drnash {

double utility_cost(double load, const UtilityCostCoefficients& c) {
  return c.c0 + c.c1 * load + c.c2 * load * load;
}

double utility_profit(double p_system, double total_pv, double total_dr,
                      const UtilityCostCoefficients& coeffs) {
  const double q = p_system - total_pv - total_dr;
  if (q < 0.0) {
    throw ValidationError("utility_profit: adjusted load Q = " + std::to_string(q) +
                          " kW is negative; PV plus DR exceeds the system load");
  }
  return utility_cost(p_system, coeffs) - utility_cost(q, coeffs);
}

double provider_profit(std::span<const double> lambda_dr, std::span<const double> lambda_pv,
                       std::span<const double> pv_gen, std::span<const double> x) {
  double total = 0.0;
  for (std::size_t i = 0; i < lambda_dr.size(); ++i) {
    total += (lambda_dr[i] - lambda_pv[i]) * (pv_gen[i] - x[i]);
  }
  return total;
}

SettlementReport settle(const Scenario& scenario, const Problem& problem,
                        const GameState& state) {
  const int h = problem.horizon;
  const int n = problem.n;
  SettlementReport r;
  r.provider_profit = HourlySeries::zeros(h);
  r.utility_cost_before = HourlySeries::zeros(h);
  r.utility_cost_after = HourlySeries::zeros(h);
  r.adjusted_load = HourlySeries::zeros(h);
  r.utility_profit = HourlySeries::zeros(h);
  r.pv_payment.assign(static_cast<std::size_t>(n), HourlySeries::zeros(h));
  r.dr_payment.assign(static_cast<std::size_t>(n), HourlySeries::zeros(h));

  for (int t = 0; t < h; ++t) {
    const std::size_t row = static_cast<std::size_t>(problem.idx(t, 0));
    const std::size_t count = static_cast<std::size_t>(n);
    r.provider_profit[t] = provider_profit(
        std::span(state.lambda_dr).subspan(row, count),
        std::span(state.lambda_pv).subspan(row, count),
        std::span(problem.pv_gen).subspan(row, count), std::span(state.x).subspan(row, count));

    double total_pv = 0.0;
    double total_dr = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::size_t c = row + static_cast<std::size_t>(i);
      total_pv += problem.pv_gen[c];
      total_dr += state.dr[c];
      const double surplus = problem.pv_gen[c] - state.x[c];
      r.pv_payment[static_cast<std::size_t>(i)][t] = state.lambda_pv[c] * surplus;
      r.dr_payment[static_cast<std::size_t>(i)][t] = state.lambda_dr[c] * surplus;
    }
    const double p_system = scenario.system_load[t];
    r.adjusted_load[t] = p_system - total_pv - total_dr;
    r.utility_cost_before[t] = utility_cost(p_system, scenario.utility_cost);
    r.utility_profit[t] = utility_profit(p_system, total_pv, total_dr, scenario.utility_cost);
    r.utility_cost_after[t] = utility_cost(r.adjusted_load[t], scenario.utility_cost);
  }
  return r;
}

}  // namespace drnash
