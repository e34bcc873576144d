#include "drnash/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "drnash/pricing.hpp"
#include "drnash/prosumer.hpp"

namespace drnash::kernels {

namespace {

// Small problems are cheaper single-threaded; the cutoffs only affect
// speed, never results.
constexpr int kParallelCells = 256;
constexpr long kParallelScanWork = 1 << 14;

inline void quote_cell(const Problem& p, GameState& s, int t, int i) {
  const int c = p.idx(t, i);
  s.sdr[c] = supply_demand_ratio(p.pv_gen[c], s.x[c]);
  s.lambda_pv[c] = pv_price(s.sdr[c], p.retail[t], p.pv_gen_cost[c]);
  s.lambda_dr[c] = dr_price(s.sdr[c], p.retail[t], s.lambda_pv[c]);
}

// Regularized coupling total over all prosumers at hour t. Serial inner
// loop in prosumer order, shared by both sweep flavors so they agree
// bit-for-bit.
inline double coupling_total(const Problem& p, std::span<const double> dr, int t,
                             double eps_reg) {
  double total = 0.0;
  for (int k = 0; k < p.n; ++k) {
    total += 1.0 / (dr[static_cast<std::size_t>(p.idx(t, k))] + eps_reg);
  }
  return total;
}

inline double sweep_cell(const Problem& p, std::span<const double> lambda_pv, double damping,
                         double eps_reg, std::span<const double> dr_in, double total, int t,
                         int i) {
  const std::size_t c = static_cast<std::size_t>(p.idx(t, i));
  BestResponseContext ctx;
  ctx.coupling = total - 1.0 / (dr_in[c] + eps_reg);
  ctx.lambda_pv = lambda_pv[c];
  ctx.d_max = p.d_max[c];
  const double response = best_response(ctx, p.alpha[static_cast<std::size_t>(i)]);
  return (1.0 - damping) * dr_in[c] + damping * response;
}

struct ScanResult {
  double improvement;
  double best_dr;
};

inline ScanResult scan_cell(const Problem& p, const GameState& s, double eps_reg, int grid,
                            int t, int i) {
  const std::size_t c = static_cast<std::size_t>(p.idx(t, i));
  const double alpha = p.alpha[static_cast<std::size_t>(i)];
  const double coupling_others = [&] {
    double total = 0.0;
    for (int k = 0; k < p.n; ++k) {
      if (k != i) {
        total += 1.0 / (s.dr[static_cast<std::size_t>(p.idx(t, k))] + eps_reg);
      }
    }
    return total;
  }();
  const double d_max = p.d_max[c];
  const double lambda = s.lambda_pv[c];
  const double pv = p.pv_gen[c];
  const double baseline = p.baseline[c];

  double best_net = hour_net_cost(alpha, 0.0, coupling_others, eps_reg, lambda, pv, baseline);
  double best_d = 0.0;
  for (int g = 1; g <= grid; ++g) {
    const double d = d_max * static_cast<double>(g) / static_cast<double>(grid);
    const double net = hour_net_cost(alpha, d, coupling_others, eps_reg, lambda, pv, baseline);
    if (net < best_net) {
      best_net = net;
      best_d = d;
    }
  }
  const double current =
      hour_net_cost(alpha, s.dr[c], coupling_others, eps_reg, lambda, pv, baseline);
  return {std::max(0.0, current - best_net), best_d};
}

}  // namespace

void compute_quotes_ref(const Problem& p, GameState& s) {
  for (int t = 0; t < p.horizon; ++t) {
    for (int i = 0; i < p.n; ++i) {
      quote_cell(p, s, t, i);
    }
  }
}

void compute_quotes_omp(const Problem& p, GameState& s) {
  const int cells = p.cells();
#pragma omp parallel for schedule(static) if (cells >= kParallelCells)
  for (int c = 0; c < cells; ++c) {
    quote_cell(p, s, c / p.n, c % p.n);
  }
}

double jacobi_sweep_ref(const Problem& p, std::span<const double> lambda_pv, double damping,
                        double eps_reg, std::span<const double> dr_in,
                        std::span<double> dr_out) {
  double max_delta = 0.0;
  for (int t = 0; t < p.horizon; ++t) {
    const double total = coupling_total(p, dr_in, t, eps_reg);
    for (int i = 0; i < p.n; ++i) {
      const std::size_t c = static_cast<std::size_t>(p.idx(t, i));
      dr_out[c] = sweep_cell(p, lambda_pv, damping, eps_reg, dr_in, total, t, i);
      max_delta = std::max(max_delta, std::abs(dr_out[c] - dr_in[c]));
    }
  }
  return max_delta;
}

double jacobi_sweep_omp(const Problem& p, std::span<const double> lambda_pv, double damping,
                        double eps_reg, std::span<const double> dr_in,
                        std::span<double> dr_out) {
  double max_delta = 0.0;
  const int cells = p.cells();
#pragma omp parallel for schedule(static) reduction(max : max_delta) \
    if (cells >= kParallelCells)
  for (int t = 0; t < p.horizon; ++t) {
    const double total = coupling_total(p, dr_in, t, eps_reg);
    for (int i = 0; i < p.n; ++i) {
      const std::size_t c = static_cast<std::size_t>(p.idx(t, i));
      dr_out[c] = sweep_cell(p, lambda_pv, damping, eps_reg, dr_in, total, t, i);
      max_delta = std::max(max_delta, std::abs(dr_out[c] - dr_in[c]));
    }
  }
  return max_delta;
}

void deviation_scan_ref(const Problem& p, const GameState& s, double eps_reg, int grid,
                        std::span<double> improvement, std::span<double> best_dr) {
  for (int t = 0; t < p.horizon; ++t) {
    for (int i = 0; i < p.n; ++i) {
      const auto r = scan_cell(p, s, eps_reg, grid, t, i);
      const std::size_t c = static_cast<std::size_t>(p.idx(t, i));
      improvement[c] = r.improvement;
      best_dr[c] = r.best_dr;
    }
  }
}

void deviation_scan_omp(const Problem& p, const GameState& s, double eps_reg, int grid,
                        std::span<double> improvement, std::span<double> best_dr) {
  const int cells = p.cells();
  const long work = static_cast<long>(cells) * static_cast<long>(grid);
#pragma omp parallel for schedule(dynamic, 1) if (work >= kParallelScanWork)
  for (int c = 0; c < cells; ++c) {
    const auto r = scan_cell(p, s, eps_reg, grid, c / p.n, c % p.n);
    improvement[static_cast<std::size_t>(c)] = r.improvement;
    best_dr[static_cast<std::size_t>(c)] = r.best_dr;
  }
}

}  // namespace drnash::kernels
