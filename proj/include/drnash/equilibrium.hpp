#pragma once

#include <vector>

#include "drnash/prosumer.hpp"
#include "drnash/settlement.hpp"
#include "drnash/state.hpp"

namespace drnash {

struct SolveOptions {
  double eps_reg = 1e-6;   // kW added to every (p - x) denominator
  double damping = 0.5;    // Jacobi blend factor, in (0, 1]
  double eps1 = 1e-3;      // kW, DR convergence threshold
  double eps2 = 1e-3;      // $, provider-profit threshold
  double eps3 = 1e-3;      // $, utility-profit threshold
  int max_outer = 500;
  int max_inner = 200;
  double inner_tol = 1e-6;  // kW, inner fixed-point tolerance
  int deviation_grid = 10000;
  bool single_sweep = false;            // one Jacobi sweep per outer iteration
  bool aggregate_convergence = false;   // compare daily profit totals instead of per-hour
  bool use_reference_kernels = false;   // serial reference path instead of OpenMP
};

/// One outer iteration of the coupled game.
struct IterationRecord {
  int outer_index = 0;
  std::vector<double> dr;          // hour-major cells, kW
  HourlySeries provider_profit;    // $ per hour
  HourlySeries utility_profit;     // $ per hour
  double provider_profit_total = 0.0;
  double utility_profit_total = 0.0;
  double max_dr_delta = 0.0;       // vs the previous iteration, kW
  int inner_sweeps = 0;
  bool inner_converged = true;
};

struct NashCell {
  int prosumer = 0;
  int hour = 0;
  double dr = 0.0;           // kW at the candidate equilibrium
  double best_dr = 0.0;      // kW, best unilateral deviation found
  double improvement = 0.0;  // $, net-cost reduction that deviation achieves
};

struct NashReport {
  std::vector<NashCell> cells;
  double max_improvement = 0.0;
};

struct EquilibriumResult {
  bool converged = false;
  std::vector<IterationRecord> trace;
  GameState state;  // final decision variables and the prices they answered to
  std::vector<ProsumerState> states;  // per-prosumer view of `state`
  SettlementReport settlement;
  NashReport nash;  // filled by verify_nash
};

struct InnerGameStats {
  int sweeps = 0;
  bool converged = true;
  double last_delta = 0.0;
};

/// Simultaneous game among prosumers with prices frozen: damped Jacobi
/// sweeps from state.dr until the largest per-cell change falls to
/// opts.inner_tol or opts.max_inner sweeps have run (one sweep when
/// opts.single_sweep). Updates state.dr and state.x in place.
InnerGameStats inner_game(const Problem& problem, GameState& state, const SolveOptions& opts);

/// All three convergence criteria between consecutive outer iterations:
/// max |dr change| <= eps1, profit changes <= eps2/eps3 (per hour, or on
/// daily totals with opts.aggregate_convergence).
bool converged(const IterationRecord& prev, const IterationRecord& curr, const SolveOptions& opts);

/// Iterates the coupled game from x = baseline, dr = 0: quote prices from
/// the previous iterate, run the simultaneous game, resettle, test
/// convergence. Non-convergence within max_outer is a reported outcome
/// (converged = false, full trace), never an exception.
EquilibriumResult run(const Scenario& scenario, const SolveOptions& opts = {});

/// Unilateral-deviation scan over a deviation_grid-point lattice per
/// prosumer-hour, prices and everyone else frozen. The report lists every
/// cell's best improvement; max_improvement is the headline number.
NashReport verify_nash(const EquilibriumResult& result, const Scenario& scenario,
                       const SolveOptions& opts = {});

/// Materializes per-prosumer states (x, dr, theta, quotes) from the flat arrays.
std::vector<ProsumerState> extract_states(const Problem& problem, const GameState& state,
                                          double eps_reg);

}  // namespace drnash
