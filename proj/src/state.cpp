#include "drnash/state.hpp"

#include <algorithm>

namespace drnash {

Problem Problem::build(const Scenario& s) {
  Problem p;
  p.n = static_cast<int>(s.prosumers.size());
  p.horizon = s.horizon;
  const int cells = p.horizon * p.n;
  p.baseline.resize(cells);
  p.pv_gen.resize(cells);
  p.pv_gen_cost.resize(cells);
  p.d_max.resize(cells);
  p.retail.resize(p.horizon);
  p.alpha.resize(p.n);

  for (int i = 0; i < p.n; ++i) {
    p.alpha[static_cast<std::size_t>(i)] = s.prosumers[static_cast<std::size_t>(i)].alpha;
  }
  for (int t = 0; t < p.horizon; ++t) {
    p.retail[static_cast<std::size_t>(t)] = s.tariff.retail_rate[t];
    const bool event = s.is_event_hour(t);
    for (int i = 0; i < p.n; ++i) {
      const auto& spec = s.prosumers[static_cast<std::size_t>(i)];
      const int c = p.idx(t, i);
      p.baseline[c] = spec.baseline_load[t];
      p.pv_gen[c] = spec.pv_generation[t];
      p.pv_gen_cost[c] = spec.pv_gen_cost[t];
      p.d_max[c] = event ? std::min(spec.baseline_load[t], spec.dr_cap()) : 0.0;
    }
  }
  return p;
}

GameState GameState::initial(const Problem& problem) {
  GameState s;
  s.n = problem.n;
  s.horizon = problem.horizon;
  s.x = problem.baseline;  // no DR provided before the event is scheduled
  s.dr.assign(problem.baseline.size(), 0.0);
  s.sdr.assign(problem.baseline.size(), 0.0);
  s.lambda_pv.assign(problem.baseline.size(), 0.0);
  s.lambda_dr.assign(problem.baseline.size(), 0.0);
  return s;
}

}  // namespace drnash
