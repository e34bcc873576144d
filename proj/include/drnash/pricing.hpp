#pragma once

#include "drnash/scenario.hpp"

namespace drnash {

/// One prosumer-hour price signal. sdr uses +infinity as the zero-demand
/// flag; both prices are zero whenever sdr <= 1.
struct PriceQuote {
  int hour = 0;
  double sdr = 0.0;
  double lambda_pv = 0.0;  // $/kWh paid to the prosumer for surplus PV and DR
  double lambda_dr = 0.0;  // $/kWh paid by the utility to the DR provider

  bool operator==(const PriceQuote&) const = default;
};

/// Supply-demand ratio pv_gen / x. Returns +infinity when x = 0 with
/// positive generation, 0 when both are zero. Negative inputs throw
/// std::domain_error.
double supply_demand_ratio(double pv_gen, double x);

/// Dynamic PV price as a function of the supply-demand ratio: zero for
/// sdr <= 1, the fitted inverse-proportional curve above 1, approaching the
/// retail rate as sdr -> 1+ and the generation cost as sdr -> infinity
/// (pv_gen_cost is returned exactly at the +infinity flag).
/// Requires 0 <= pv_gen_cost < retail_rate, else std::domain_error.
double pv_price(double sdr, double retail_rate, double pv_gen_cost);

/// Dynamic DR price: same fitted curve with the PV price as the lower
/// anchor. Zero for sdr <= 1 or lambda_pv = 0; lambda_pv exactly at the
/// +infinity flag. Requires 0 <= lambda_pv <= retail_rate.
double dr_price(double sdr, double retail_rate, double lambda_pv);

/// Composes the two price functions over one prosumer-hour:
/// sdr from (pv_generation, x), then lambda_pv, then lambda_dr.
/// Requires 0 <= x <= baseline_load at that hour.
PriceQuote quote(const ProsumerSpec& prosumer, double x, int hour, const TouTariff& tariff);

}  // namespace drnash
