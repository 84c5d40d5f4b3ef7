#include <benchmark/benchmark.h>

#include "resest/observability/structural.hpp"
#include "resest/sim/estimator.hpp"
#include "resest/sim/simulation.hpp"
#include "resest/sim/system.hpp"

using namespace resest;

namespace {

observability::SparsityPattern blocks(int copies) {
  std::vector<std::pair<int, int>> pos;
  for (int r = 0; r < copies; ++r) {
    const int o = 7 * r;
    for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {2, 3}, {3, 2}, {4, 5}, {5, 4}, {0, 6}, {2, 6}, {4, 6}})
      pos.push_back({o + i, o + j});
  }
  return observability::SparsityPattern::square(7 * copies, pos);
}

struct Setup {
  sim::LtiSystem sys;
  sim::EstimatorConfig config;
};

Setup setup(int copies) {
  const auto p = blocks(copies);
  Rng rng(1);
  Matrix a = sim::random_plant(p, 0.95, rng);
  auto s = observability::place_sensors(p, 1);
  auto w = weights::metropolis_hastings_weights(graphs::undirected_cycle(s.sensor_count()));
  gain::BlockDiagGain k(s.sensor_count(), p.rows());
  return {sim::LtiSystem(a), sim::initial_config(w, s, k)};
}

}  // namespace

static void BM_EstimatorStep(benchmark::State& state) {
  const auto st = setup(static_cast<int>(state.range(0)));
  const int m = st.config.s.sensor_count();
  const int n = st.sys.state_count();
  sim::EstimatorState prev{{}, std::vector<Vector>(m, Vector::Ones(n)), 0};
  Rng rng(2);
  const auto y = sim::measure(st.sys, st.config.s, Vector::Ones(n), rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(sim::estimator_step(prev, st.config.w, st.sys.a(), st.config.s, st.config.k, y));
}
BENCHMARK(BM_EstimatorStep)->Arg(1)->Arg(10)->Unit(benchmark::kMicrosecond);

static void BM_Simulation100Steps(benchmark::State& state) {
  const auto st = setup(static_cast<int>(state.range(0)));
  sim::SimulationOptions o;
  o.horizon = 100;
  o.record_run = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(sim::run_simulation(st.sys, st.config, sim::FailureScenario{}, o));
}
BENCHMARK(BM_Simulation100Steps)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);
