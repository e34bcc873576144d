#include "drnash/pricing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace drnash {

namespace {

// Shared fitting curve for both dynamic prices: the DR price is the same
// function with the PV price in place of the generation cost as the lower
// anchor. Strictly decreasing on sdr in (1, inf), from retail_rate down to
// anchor.
double fitted_price(double sdr, double retail_rate, double anchor) {
  if (!(sdr > 1.0)) {
    return 0.0;
  }
  if (std::isinf(sdr)) {
    return anchor;
  }
  return retail_rate * anchor * sdr / (retail_rate * sdr + (anchor - retail_rate));
}

}  // namespace

double supply_demand_ratio(double pv_gen, double x) {
  if (pv_gen < 0.0 || x < 0.0) {
    throw std::domain_error("supply_demand_ratio: pv_gen and x must be nonnegative");
  }
  if (x == 0.0) {
    return pv_gen == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return pv_gen / x;
}

double pv_price(double sdr, double retail_rate, double pv_gen_cost) {
  if (!(retail_rate > 0.0)) {
    throw std::domain_error("pv_price: retail_rate must be positive");
  }
  if (pv_gen_cost < 0.0) {
    throw std::domain_error("pv_price: pv_gen_cost must be nonnegative");
  }
  if (pv_gen_cost >= retail_rate) {
    throw std::domain_error("pv_price: pv_gen_cost must stay below the retail rate");
  }
  return fitted_price(sdr, retail_rate, pv_gen_cost);
}

double dr_price(double sdr, double retail_rate, double lambda_pv) {
  if (!(retail_rate > 0.0)) {
    throw std::domain_error("dr_price: retail_rate must be positive");
  }
  if (lambda_pv < 0.0) {
    throw std::domain_error("dr_price: lambda_pv must be nonnegative");
  }
  if (lambda_pv > retail_rate) {
    throw std::domain_error("dr_price: lambda_pv must not exceed the retail rate");
  }
  if (lambda_pv == 0.0) {
    return 0.0;
  }
  return fitted_price(sdr, retail_rate, lambda_pv);
}

PriceQuote quote(const ProsumerSpec& prosumer, double x, int hour, const TouTariff& tariff) {
  if (hour < 0 || hour >= prosumer.baseline_load.size()) {
    throw std::out_of_range("quote: hour " + std::to_string(hour) + " outside the horizon");
  }
  const double baseline = prosumer.baseline_load[hour];
  if (x < 0.0 || x > baseline) {
    throw std::domain_error("quote: x must lie in [0, baseline_load] at hour " +
                            std::to_string(hour));
  }
  PriceQuote q;
  q.hour = hour;
  q.sdr = supply_demand_ratio(prosumer.pv_generation[hour], x);
  q.lambda_pv = pv_price(q.sdr, tariff.retail_rate[hour], prosumer.pv_gen_cost[hour]);
  q.lambda_dr = dr_price(q.sdr, tariff.retail_rate[hour], q.lambda_pv);
  return q;
}

}  // namespace drnash
