#pragma once

#include <span>

#include "drnash/state.hpp"

namespace drnash::kernels {

// Each kernel comes in two flavors: *_ref is the plain serial reference,
// *_omp the OpenMP version used by the solver. Both produce bit-identical
// results for the same inputs: every cell is computed independently from a
// frozen input state and reductions are limited to max(), which is
// order-insensitive. Falls back to serial when built without OpenMP.

/// Fills sdr, lambda_pv, lambda_dr from state.x.
void compute_quotes_ref(const Problem& problem, GameState& state);
void compute_quotes_omp(const Problem& problem, GameState& state);

/// One damped Jacobi sweep of the simultaneous game: every prosumer-hour
/// best-responds to the frozen dr_in, then blends
///   dr_out = (1 - damping) * dr_in + damping * best_response.
/// lambda_pv stays fixed for the whole sweep. Returns the max absolute
/// per-cell change.
double jacobi_sweep_ref(const Problem& problem, std::span<const double> lambda_pv,
                        double damping, double eps_reg,
                        std::span<const double> dr_in, std::span<double> dr_out);
double jacobi_sweep_omp(const Problem& problem, std::span<const double> lambda_pv,
                        double damping, double eps_reg,
                        std::span<const double> dr_in, std::span<double> dr_out);

/// Unilateral-deviation scan: for every prosumer-hour, evaluates the hour
/// net cost on a (grid+1)-point lattice over [0, d_max] with everyone else
/// and all prices frozen, recording the best achievable improvement over the
/// current dr and the deviation achieving it.
void deviation_scan_ref(const Problem& problem, const GameState& state, double eps_reg,
                        int grid, std::span<double> improvement, std::span<double> best_dr);
void deviation_scan_omp(const Problem& problem, const GameState& state, double eps_reg,
                        int grid, std::span<double> improvement, std::span<double> best_dr);

}  // namespace drnash::kernels
