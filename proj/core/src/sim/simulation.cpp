#include "resest/sim/simulation.hpp"

#include <cmath>
#include <algorithm>
#include <random>

#include "resest/common/error.hpp"
#include "resest/common/rng.hpp"
#include "resest/gain/closed_loop.hpp"

namespace resest::sim {

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    carry_ += (sum_ - t) + v;
  else
    carry_ += (v - t) + sum_;
  sum_ = t;
}

std::vector<double> mse(const std::vector<std::vector<Vector>>& errors, int n) {
  if (errors.empty()) throw InvalidInput("MSE needs at least one run");
  if (n <= 0) throw InvalidInput("MSE needs a positive state count");
  const std::size_t steps = errors.front().size();
  std::vector<double> out(steps, 0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    CompensatedSum sum;
    for (const auto& run : errors) {
      if (run.size() != steps) throw DimensionMismatch("runs differ in length");
      sum.add(run[k].squaredNorm() / n);
    }
    out[k] = sum.value() / static_cast<double>(errors.size());
  }
  return out;
}

Vector SimTrace::error(int k, int sensor) const {
  const auto& est = posterior.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(sensor));
  if (est.size() == 0) throw InvalidInput("sensor has no estimate at this step");
  return true_state.at(static_cast<std::size_t>(k)) - est;
}

namespace {

Vector gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

}  // namespace

SimTrace run_simulation(const LtiSystem& sys, const EstimatorConfig& config, const FailureScenario& scenario,
                        const SimulationOptions& options) {
  const int n = sys.state_count();
  const int m = config.w.size();
  if (options.horizon < 1) throw InvalidInput("horizon must be at least 1");
  if (options.runs < 1) throw InvalidInput("runs must be at least 1");
  if (config.s.state_count() != n || config.k.state_count() != n)
    throw DimensionMismatch("estimator configuration does not match the plant");
  if (config.s.sensor_count() != m || config.k.sensor_count() != m)
    throw DimensionMismatch("estimator configuration disagrees on the sensor count");
  scenario.validate(options.horizon, m);

  SimTrace trace;
  trace.horizon = options.horizon;
  trace.runs = options.runs;
  trace.state_count = n;
  trace.sensor_count = m;
  trace.seed = options.seed;
  trace.scenario = scenario.name;
  trace.policy = to_string(scenario.policy);
  trace.rho_pre = gain::assemble_closed_loop(config.w, sys.a(), config.s, config.k,
                                             options.synthesis.surrogate.closed_loop)
                      .spectral_radius;

  // Failures do not depend on the noise, so every configuration is built once.
  std::vector<EstimatorConfig> phases{config};
  std::vector<int> switch_at;
  for (const auto& e : scenario.events) {
    FailureOutcome out = apply_failure(sys.a(), phases.back(), e, scenario.policy, scenario.repair, options.synthesis);
    phases.push_back(out.config);
    switch_at.push_back(e.time);
    trace.failures.push_back(std::move(out));
  }
  if (!trace.failures.empty()) trace.rho_post = trace.failures.back().rho;

  trace.active_until.assign(static_cast<std::size_t>(m), options.horizon);
  for (std::size_t p = 1; p < phases.size(); ++p)
    for (int id : phases[p - 1].sensor_ids)
      if (std::find(phases[p].sensor_ids.begin(), phases[p].sensor_ids.end(), id) == phases[p].sensor_ids.end())
        trace.active_until[static_cast<std::size_t>(id)] = switch_at[p - 1] - 1;

  std::vector<std::vector<CompensatedSum>> sums(static_cast<std::size_t>(options.horizon),
                                                std::vector<CompensatedSum>(static_cast<std::size_t>(m)));
  for (int run = 0; run < options.runs; ++run) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(run)));
    Vector x = gaussian(n, rng);
    EstimatorState state;
    for (int i = 0; i < m; ++i) state.posterior.push_back(gaussian(n, rng));
    state.prior = state.posterior;
    CommunicationCounter counter;
    const bool record = options.record_run && run == 0;
    if (record) {
      trace.true_state.push_back(x);
      trace.posterior.push_back(state.posterior);
    }

    std::size_t phase = 0;
    for (int k = 1; k <= options.horizon; ++k) {
      while (phase < switch_at.size() && switch_at[phase] == k) {
        // Drop estimates of removed sensors, keep survivors in order.
        const auto& before = phases[phase].sensor_ids;
        const auto& after = phases[phase + 1].sensor_ids;
        EstimatorState kept;
        kept.k = state.k;
        for (std::size_t i = 0; i < before.size(); ++i)
          if (std::find(after.begin(), after.end(), before[i]) != after.end()) {
            kept.prior.push_back(state.prior[i]);
            kept.posterior.push_back(state.posterior[i]);
          }
        state = std::move(kept);
        ++phase;
      }
      const EstimatorConfig& c = phases[phase];
      x = step_plant(sys, x, rng);
      const std::vector<Vector> y = measure(sys, c.s, x, rng, c.sensor_ids);
      state = estimator_step(state, c.w, sys.a(), c.s, c.k, y, &counter);

      for (int i = 0; i < state.sensor_count(); ++i)
        sums[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c.sensor_ids[static_cast<std::size_t>(i)])].add(
            (x - state.posterior[static_cast<std::size_t>(i)]).squaredNorm() / n);
      if (record) {
        trace.true_state.push_back(x);
        std::vector<Vector> row(static_cast<std::size_t>(m));
        for (int i = 0; i < state.sensor_count(); ++i)
          row[static_cast<std::size_t>(c.sensor_ids[static_cast<std::size_t>(i)])] = state.posterior[static_cast<std::size_t>(i)];
        trace.posterior.push_back(std::move(row));
      }
    }
    trace.rounds.push_back(counter.rounds);
  }

  trace.mse.resize(options.horizon, m);
  for (int k = 0; k < options.horizon; ++k)
    for (int i = 0; i < m; ++i)
      trace.mse(k, i) = sums[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].value() / options.runs;
  return trace;
}

}  // namespace resest::sim
