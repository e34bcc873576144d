// Serial reference vs OpenMP kernels at solver-realistic and scaled-up
// sizes. Caps the thread count at 8 to keep numbers comparable across
// machines; results must match bitwise regardless (see tests).

#include <benchmark/benchmark.h>
#include <omp.h>

#include <algorithm>
#include <random>
#include <vector>

#include "drnash/kernels.hpp"

using namespace drnash;

namespace {

struct Fixture {
  Problem problem;
  GameState state;
};

Fixture make_fixture(int n, int horizon) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n) * 1000 + horizon);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Fixture f;
  Problem& p = f.problem;
  p.n = n;
  p.horizon = horizon;
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(horizon);
  p.baseline.resize(cells);
  p.pv_gen.resize(cells);
  p.pv_gen_cost.resize(cells);
  p.d_max.resize(cells);
  p.retail.resize(static_cast<std::size_t>(horizon));
  p.alpha.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    p.alpha[static_cast<std::size_t>(i)] = 0.1 + 0.9 * unit(rng);
  }
  for (int t = 0; t < horizon; ++t) {
    p.retail[static_cast<std::size_t>(t)] = 0.3 + 0.7 * unit(rng);
  }
  for (std::size_t c = 0; c < cells; ++c) {
    p.baseline[c] = 20.0 + unit(rng) * 100.0;
    p.pv_gen[c] = unit(rng) * 200.0;
    p.pv_gen_cost[c] = unit(rng) * 0.29;
    p.d_max[c] = unit(rng) * 0.1 * p.baseline[c];
  }
  f.state = GameState::initial(p);
  for (std::size_t c = 0; c < cells; ++c) {
    f.state.dr[c] = unit(rng) * p.d_max[c];
    f.state.x[c] = p.baseline[c] - f.state.dr[c];
  }
  kernels::compute_quotes_ref(p, f.state);
  return f;
}

void bench_quotes(benchmark::State& bm, bool parallel) {
  const Fixture f = make_fixture(static_cast<int>(bm.range(0)), 168);
  GameState s = f.state;
  for (auto _ : bm) {
    if (parallel) {
      kernels::compute_quotes_omp(f.problem, s);
    } else {
      kernels::compute_quotes_ref(f.problem, s);
    }
    benchmark::DoNotOptimize(s.lambda_dr.data());
  }
  bm.SetItemsProcessed(bm.iterations() * f.problem.cells());
}

void bench_sweep(benchmark::State& bm, bool parallel) {
  const Fixture f = make_fixture(static_cast<int>(bm.range(0)), 168);
  std::vector<double> out(f.state.dr.size());
  for (auto _ : bm) {
    double delta;
    if (parallel) {
      delta = kernels::jacobi_sweep_omp(f.problem, f.state.lambda_pv, 0.5, 1e-6, f.state.dr, out);
    } else {
      delta = kernels::jacobi_sweep_ref(f.problem, f.state.lambda_pv, 0.5, 1e-6, f.state.dr, out);
    }
    benchmark::DoNotOptimize(delta);
  }
  bm.SetItemsProcessed(bm.iterations() * f.problem.cells());
}

void bench_scan(benchmark::State& bm, bool parallel) {
  const Fixture f = make_fixture(static_cast<int>(bm.range(0)), 24);
  const int grid = 2000;
  std::vector<double> improvement(f.state.dr.size());
  std::vector<double> best(f.state.dr.size());
  for (auto _ : bm) {
    if (parallel) {
      kernels::deviation_scan_omp(f.problem, f.state, 1e-6, grid, improvement, best);
    } else {
      kernels::deviation_scan_ref(f.problem, f.state, 1e-6, grid, improvement, best);
    }
    benchmark::DoNotOptimize(improvement.data());
  }
  bm.SetItemsProcessed(bm.iterations() * f.problem.cells() * grid);
}

void quotes_ref(benchmark::State& bm) { bench_quotes(bm, false); }
void quotes_omp(benchmark::State& bm) { bench_quotes(bm, true); }
void sweep_ref(benchmark::State& bm) { bench_sweep(bm, false); }
void sweep_omp(benchmark::State& bm) { bench_sweep(bm, true); }
void scan_ref(benchmark::State& bm) { bench_scan(bm, false); }
void scan_omp(benchmark::State& bm) { bench_scan(bm, true); }

BENCHMARK(quotes_ref)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(quotes_omp)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(sweep_ref)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(sweep_omp)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(scan_ref)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(scan_omp)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

int main(int argc, char** argv) {
  omp_set_num_threads(std::min(omp_get_max_threads(), 8));
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
