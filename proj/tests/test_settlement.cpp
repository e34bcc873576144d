#include <doctest.h>

#include <array>
#include <random>

#include "drnash/errors.hpp"
#include "drnash/pricing.hpp"
#include "drnash/settlement.hpp"

using namespace drnash;

namespace {
const UtilityCostCoefficients kReplicaCoeffs{4207.5, -6.74, 0.0029};
}

TEST_CASE("utility_cost hand values") {
  CHECK(utility_cost(2000.0, kReplicaCoeffs) == doctest::Approx(2327.5).epsilon(1e-12));
  CHECK(utility_cost(1800.0, kReplicaCoeffs) == doctest::Approx(1471.5).epsilon(1e-12));
  CHECK(utility_cost(0.0, kReplicaCoeffs) == 4207.5);
}

TEST_CASE("utility_profit hand values") {
  CHECK(utility_profit(2000.0, 0.0, 0.0, kReplicaCoeffs) == 0.0);
  CHECK(utility_profit(2000.0, 150.0, 50.0, kReplicaCoeffs) == doctest::Approx(856.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)utility_profit(100.0, 90.0, 20.0, kReplicaCoeffs), ValidationError);
}

TEST_CASE("utility_profit equals the cost difference exactly") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const UtilityCostCoefficients c{unit(rng) * 5000.0, -10.0 * unit(rng), 0.001 + unit(rng) * 0.01};
    const double p = 500.0 + unit(rng) * 2000.0;
    const double pv = unit(rng) * 200.0;
    const double dr = unit(rng) * 50.0;
    const double q = p - pv - dr;
    CHECK(utility_profit(p, pv, dr, c) == utility_cost(p, c) - utility_cost(q, c));
  }
}

TEST_CASE("linear cost curve reduces profit to k times the reduction") {
  const UtilityCostCoefficients linearish{100.0, 2.5, 1e-300};
  CHECK(utility_profit(1000.0, 120.0, 30.0, linearish) == doctest::Approx(2.5 * 150.0));
}

TEST_CASE("profit is positive on the increasing branch") {
  // with the replica coefficients the cost curve rises above ~1162 kW
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double p = 1400.0 + unit(rng) * 800.0;
    const double pv = unit(rng) * 150.0;
    const double dr = unit(rng) * 50.0;
    if (pv + dr > 0.0) {
      CHECK(utility_profit(p, pv, dr, kReplicaCoeffs) > 0.0);
    }
  }
}

TEST_CASE("provider_profit hand values") {
  const std::array<double, 1> ldr{0.25};
  const std::array<double, 1> lpv{0.1 / 0.6};
  const std::array<double, 1> pv{200.0};
  const std::array<double, 1> x{100.0};
  CHECK(provider_profit(ldr, lpv, pv, x) == doctest::Approx(8.3333).epsilon(1e-4));

  const std::array<double, 2> zeros{0.0, 0.0};
  const std::array<double, 2> pv2{50.0, 120.0};
  const std::array<double, 2> x2{60.0, 80.0};
  CHECK(provider_profit(zeros, zeros, pv2, x2) == 0.0);

  const std::array<double, 2> equal{0.2, 0.3};
  CHECK(provider_profit(equal, equal, pv2, x2) == 0.0);
}

TEST_CASE("provider margin is nonnegative on pricing-produced quotes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProsumerSpec spec;
  spec.id = "m";
  spec.alpha = 0.5;
  spec.baseline_load = HourlySeries::constant(1, 100.0);
  spec.pv_gen_cost = HourlySeries::constant(1, 0.08);
  TouTariff tariff{HourlySeries::constant(1, 0.42)};
  for (int k = 0; k < 500; ++k) {
    const double pv_gen = unit(rng) * 300.0;
    const double x = unit(rng) * 100.0;
    spec.pv_generation = HourlySeries::constant(1, pv_gen);
    const PriceQuote q = quote(spec, x, 0, tariff);
    const std::array<double, 1> ldr{q.lambda_dr};
    const std::array<double, 1> lpv{q.lambda_pv};
    const std::array<double, 1> pv{pv_gen};
    const std::array<double, 1> xx{x};
    if (q.lambda_pv > 0.0) {
      CHECK(provider_profit(ldr, lpv, pv, xx) >= 0.0);
    }
  }
}

TEST_CASE("settle assembles a consistent hourly report") {
  const Scenario s = replica_scenario();
  const Problem problem = Problem::build(s);
  GameState state = GameState::initial(problem);

  SettlementReport rep = settle(s, problem, state);
  REQUIRE(rep.adjusted_load.size() == s.horizon);
  REQUIRE(rep.pv_payment.size() == s.prosumers.size());
  for (int t = 0; t < s.horizon; ++t) {
    double pv_sum = 0.0;
    for (const auto& p : s.prosumers) {
      pv_sum += p.pv_generation[t];
    }
    CHECK(rep.adjusted_load[t] == s.system_load[t] - pv_sum);
    CHECK(rep.utility_profit[t] == rep.utility_cost_before[t] - rep.utility_cost_after[t]);
    CHECK(rep.provider_profit[t] == 0.0);  // initial state carries zero prices
    CHECK(rep.utility_cost_before[t] == utility_cost(s.system_load[t], s.utility_cost));
  }
}
