#include "drnash/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "drnash/errors.hpp"
#include "drnash/kernels.hpp"

namespace drnash {

namespace {

void check_options(const SolveOptions& o) {
  if (!(o.eps_reg > 0.0) || !(o.eps1 > 0.0) || !(o.eps2 > 0.0) || !(o.eps3 > 0.0) ||
      !(o.inner_tol > 0.0)) {
    throw ValidationError("SolveOptions: all tolerances must be positive");
  }
  if (!(o.damping > 0.0 && o.damping <= 1.0)) {
    throw ValidationError("SolveOptions: damping must lie in (0, 1]");
  }
  if (o.max_outer < 1 || o.max_inner < 1 || o.deviation_grid < 1) {
    throw ValidationError("SolveOptions: iteration caps and the deviation grid must be >= 1");
  }
}

void compute_quotes(const Problem& p, GameState& s, const SolveOptions& o) {
  if (o.use_reference_kernels) {
    kernels::compute_quotes_ref(p, s);
  } else {
    kernels::compute_quotes_omp(p, s);
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

IterationRecord make_record(const Scenario& scenario, const Problem& problem,
                            const GameState& state, int outer_index,
                            std::span<const double> prev_dr, const InnerGameStats& inner) {
  IterationRecord rec;
  rec.outer_index = outer_index;
  rec.dr = state.dr;
  rec.max_dr_delta = max_abs_diff(state.dr, prev_dr);
  rec.inner_sweeps = inner.sweeps;
  rec.inner_converged = inner.converged;
  rec.provider_profit = HourlySeries::zeros(problem.horizon);
  rec.utility_profit = HourlySeries::zeros(problem.horizon);
  for (int t = 0; t < problem.horizon; ++t) {
    const std::size_t row = static_cast<std::size_t>(problem.idx(t, 0));
    const std::size_t count = static_cast<std::size_t>(problem.n);
    rec.provider_profit[t] = provider_profit(
        std::span(state.lambda_dr).subspan(row, count),
        std::span(state.lambda_pv).subspan(row, count),
        std::span(problem.pv_gen).subspan(row, count), std::span(state.x).subspan(row, count));
    double total_pv = 0.0;
    double total_dr = 0.0;
    for (std::size_t c = row; c < row + count; ++c) {
      total_pv += problem.pv_gen[c];
      total_dr += state.dr[c];
    }
    rec.utility_profit[t] =
        utility_profit(scenario.system_load[t], total_pv, total_dr, scenario.utility_cost);
  }
  rec.provider_profit_total = rec.provider_profit.total();
  rec.utility_profit_total = rec.utility_profit.total();
  return rec;
}

}  // namespace

InnerGameStats inner_game(const Problem& problem, GameState& state, const SolveOptions& opts) {
  check_options(opts);
  InnerGameStats stats;
  std::vector<double> next(state.dr.size());
  const int sweeps = opts.single_sweep ? 1 : opts.max_inner;
  for (int sweep = 1; sweep <= sweeps; ++sweep) {
    const double delta =
        opts.use_reference_kernels
            ? kernels::jacobi_sweep_ref(problem, state.lambda_pv, opts.damping, opts.eps_reg,
                                        state.dr, next)
            : kernels::jacobi_sweep_omp(problem, state.lambda_pv, opts.damping, opts.eps_reg,
                                        state.dr, next);
    state.dr.swap(next);
    stats.sweeps = sweep;
    stats.last_delta = delta;
    if (delta <= opts.inner_tol) {
      break;
    }
  }
  stats.converged = opts.single_sweep || stats.last_delta <= opts.inner_tol;
  for (std::size_t c = 0; c < state.dr.size(); ++c) {
    state.x[c] = problem.baseline[c] - state.dr[c];
  }
  return stats;
}

bool converged(const IterationRecord& prev, const IterationRecord& curr,
               const SolveOptions& opts) {
  if (max_abs_diff(curr.dr, prev.dr) > opts.eps1) {
    return false;
  }
  if (opts.aggregate_convergence) {
    return std::abs(curr.provider_profit_total - prev.provider_profit_total) <= opts.eps2 &&
           std::abs(curr.utility_profit_total - prev.utility_profit_total) <= opts.eps3;
  }
  for (int t = 0; t < curr.provider_profit.size(); ++t) {
    if (std::abs(curr.provider_profit[t] - prev.provider_profit[t]) > opts.eps2) {
      return false;
    }
    if (std::abs(curr.utility_profit[t] - prev.utility_profit[t]) > opts.eps3) {
      return false;
    }
  }
  return true;
}

EquilibriumResult run(const Scenario& scenario, const SolveOptions& opts) {
  check_options(opts);
  const Problem problem = Problem::build(scenario);
  GameState state = GameState::initial(problem);

  EquilibriumResult result;
  std::vector<double> prev_dr = state.dr;
  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    compute_quotes(problem, state, opts);  // prices answer the previous iterate's x
    const InnerGameStats inner = inner_game(problem, state, opts);
    result.trace.push_back(make_record(scenario, problem, state, outer, prev_dr, inner));
    const std::size_t k = result.trace.size();
    if (k >= 2 && converged(result.trace[k - 2], result.trace[k - 1], opts)) {
      result.converged = true;
      break;
    }
    prev_dr = state.dr;
  }

  result.state = std::move(state);
  result.states = extract_states(problem, result.state, opts.eps_reg);
  result.settlement = settle(scenario, problem, result.state);
  return result;
}

NashReport verify_nash(const EquilibriumResult& result, const Scenario& scenario,
                       const SolveOptions& opts) {
  check_options(opts);
  const Problem problem = Problem::build(scenario);
  const int cells = problem.cells();
  std::vector<double> improvement(static_cast<std::size_t>(cells));
  std::vector<double> best_dr(static_cast<std::size_t>(cells));
  if (opts.use_reference_kernels) {
    kernels::deviation_scan_ref(problem, result.state, opts.eps_reg, opts.deviation_grid,
                                improvement, best_dr);
  } else {
    kernels::deviation_scan_omp(problem, result.state, opts.eps_reg, opts.deviation_grid,
                                improvement, best_dr);
  }

  NashReport report;
  report.cells.reserve(static_cast<std::size_t>(cells));
  for (int i = 0; i < problem.n; ++i) {
    for (int t = 0; t < problem.horizon; ++t) {
      const std::size_t c = static_cast<std::size_t>(problem.idx(t, i));
      NashCell cell;
      cell.prosumer = i;
      cell.hour = t;
      cell.dr = result.state.dr[c];
      cell.best_dr = best_dr[c];
      cell.improvement = improvement[c];
      report.max_improvement = std::max(report.max_improvement, cell.improvement);
      report.cells.push_back(cell);
    }
  }
  return report;
}

std::vector<ProsumerState> extract_states(const Problem& problem, const GameState& state,
                                          double eps_reg) {
  std::vector<ProsumerState> out(static_cast<std::size_t>(problem.n));
  for (int i = 0; i < problem.n; ++i) {
    auto& ps = out[static_cast<std::size_t>(i)];
    ps.x = HourlySeries::zeros(problem.horizon);
    ps.dr = HourlySeries::zeros(problem.horizon);
    ps.theta = HourlySeries::zeros(problem.horizon);
    ps.inconvenience = HourlySeries::zeros(problem.horizon);
    ps.quotes.resize(static_cast<std::size_t>(problem.horizon));
  }
  for (int t = 0; t < problem.horizon; ++t) {
    const std::size_t row = static_cast<std::size_t>(problem.idx(t, 0));
    const auto dr_at_hour = std::span(state.dr).subspan(row, static_cast<std::size_t>(problem.n));
    double coupling_full = 0.0;
    for (int i = 0; i < problem.n; ++i) {
      coupling_full += 1.0 / (state.dr[row + static_cast<std::size_t>(i)] + eps_reg);
    }
    for (int i = 0; i < problem.n; ++i) {
      const std::size_t c = row + static_cast<std::size_t>(i);
      auto& ps = out[static_cast<std::size_t>(i)];
      ps.x[t] = state.x[c];
      ps.dr[t] = state.dr[c];
      ps.theta[t] = theta(dr_at_hour, static_cast<std::size_t>(i), eps_reg);
      ps.inconvenience[t] =
          inconvenience(problem.alpha[static_cast<std::size_t>(i)], state.dr[c], coupling_full);
      ps.quotes[static_cast<std::size_t>(t)] =
          PriceQuote{t, state.sdr[c], state.lambda_pv[c], state.lambda_dr[c]};
    }
  }
  return out;
}

}  // namespace drnash
