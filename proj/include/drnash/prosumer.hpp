#pragma once

#include <span>
#include <vector>

#include "drnash/hourly_series.hpp"
#include "drnash/pricing.hpp"

namespace drnash {

/// Everything a prosumer needs to pick its DR quantity for one hour while
/// prices and the other prosumers' strategies stay frozen.
struct BestResponseContext {
  double coupling = 0.0;   // sum over the OTHER prosumers of 1/(dr_k + eps_reg), per kW
  double lambda_pv = 0.0;  // $/kWh, fixed during the simultaneous game
  double d_max = 0.0;      // kW, min(baseline, DR cap) inside the event window, 0 outside
};

/// Per-iteration decision variables of one prosumer, plus diagnostics.
struct ProsumerState {
  HourlySeries x;              // adjusted consumption, kW
  HourlySeries dr;             // provided DR quantity, kW (baseline - x)
  HourlySeries theta;          // competition share diagnostic, dimensionless
  HourlySeries inconvenience;  // $ per hour at the final DR quantities
  std::vector<PriceQuote> quotes;
};

/// Competition share of prosumer i: its regularized inverse DR quantity over
/// the sum of everyone's. Shares over all prosumers sum to 1.
double theta(std::span<const double> all_dr, std::size_t i, double eps_reg);

/// Competition-coupled inconvenience cost alpha * dr^3 * coupling_full,
/// where coupling_full sums 1/(dr_k + eps_reg) over ALL prosumers including i.
/// Zero at dr = 0.
double inconvenience(double alpha, double dr, double coupling_full);

/// Revenue from selling surplus PV power: lambda_pv * (pv_gen - x).
/// Negative only in deficit hours, where the zero price branch makes it 0.
double pv_sale_profit(double lambda_pv, double pv_gen, double x);

/// One hour of the prosumer objective at DR quantity d with the other
/// players' regularized coupling frozen: inconvenience minus PV sale profit.
/// This is the quantity the unilateral-deviation scan minimizes.
inline double hour_net_cost(double alpha, double d, double coupling_others, double eps_reg,
                            double lambda_pv, double pv_gen, double baseline) {
  const double inc = (d == 0.0) ? 0.0 : alpha * d * d * d * (coupling_others + 1.0 / (d + eps_reg));
  return inc - lambda_pv * (pv_gen - (baseline - d));
}

/// Net cost over the whole horizon: sum of inconvenience minus PV sale
/// profit. coupling_full holds, per hour, the all-prosumer regularized
/// coupling sum (self term included).
double net_cost(const ProsumerSpec& spec, const HourlySeries& dr,
                const HourlySeries& coupling_full, const std::vector<PriceQuote>& quotes);

/// Closed-form minimizer over [0, d_max] of the hour objective
///   alpha*coupling*d^3 + alpha*d^2 - lambda_pv*d
/// (the self term of the coupled inconvenience contributes alpha*d^2 in the
/// eps_reg -> 0 limit). Written as 2*lambda / (2*alpha + sqrt(4*alpha^2 +
/// 12*alpha*coupling*lambda)) so the coupling -> 0 case needs no branch.
double best_response(const BestResponseContext& ctx, double alpha);

}  // namespace drnash
