#include "drnash/prosumer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drnash {

double theta(std::span<const double> all_dr, std::size_t i, double eps_reg) {
  if (!(eps_reg > 0.0)) {
    throw std::domain_error("theta: eps_reg must be positive");
  }
  if (i >= all_dr.size()) {
    throw std::out_of_range("theta: prosumer index out of range");
  }
  double total = 0.0;
  for (double d : all_dr) {
    if (d < 0.0) {
      throw std::domain_error("theta: dr values must be nonnegative");
    }
    total += 1.0 / (d + eps_reg);
  }
  return (1.0 / (all_dr[i] + eps_reg)) / total;
}

double inconvenience(double alpha, double dr, double coupling_full) {
  if (dr < 0.0) {
    throw std::domain_error("inconvenience: dr must be nonnegative");
  }
  if (dr == 0.0) {
    return 0.0;
  }
  return alpha * dr * dr * dr * coupling_full;
}

double pv_sale_profit(double lambda_pv, double pv_gen, double x) {
  return lambda_pv * (pv_gen - x);
}

double net_cost(const ProsumerSpec& spec, const HourlySeries& dr,
                const HourlySeries& coupling_full, const std::vector<PriceQuote>& quotes) {
  double total = 0.0;
  for (int t = 0; t < dr.size(); ++t) {
    const double x = spec.baseline_load[t] - dr[t];
    total += inconvenience(spec.alpha, dr[t], coupling_full[t]) -
             pv_sale_profit(quotes[static_cast<std::size_t>(t)].lambda_pv,
                            spec.pv_generation[t], x);
  }
  return total;
}

double best_response(const BestResponseContext& ctx, double alpha) {
  if (ctx.d_max < 0.0) {
    throw std::domain_error("best_response: d_max must be nonnegative");
  }
  if (ctx.coupling < 0.0) {
    throw std::domain_error("best_response: coupling must be nonnegative");
  }
  if (ctx.lambda_pv <= 0.0) {
    return 0.0;  // no incentive, inconvenience alone is minimized at zero DR
  }
  // Stationary point of alpha*coupling*d^3 + alpha*d^2 - lambda*d, i.e. the
  // positive root of 3*alpha*coupling*d^2 + 2*alpha*d - lambda. The
  // conjugate form below stays stable as coupling -> 0, where it reduces to
  // lambda / (2*alpha); with alpha = 0 it overflows to +inf and the clamp
  // returns d_max, the minimizer of the then-linear objective.
  const double disc = std::sqrt(4.0 * alpha * alpha + 12.0 * alpha * ctx.coupling * ctx.lambda_pv);
  const double unconstrained = 2.0 * ctx.lambda_pv / (2.0 * alpha + disc);
  return std::clamp(unconstrained, 0.0, ctx.d_max);
}

}  // namespace drnash
