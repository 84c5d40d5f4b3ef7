#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resest/sim/estimator.hpp"
#include "resest/sim/failure.hpp"
#include "resest/sim/system.hpp"

namespace resest::sim {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// MSE_i(k) = mean over runs of ||e_i(k)||^2 / n, errors indexed [run][k].
std::vector<double> mse(const std::vector<std::vector<Vector>>& errors, int n);

struct SimulationOptions {
  int horizon = 100;
  int runs = 1;
  std::uint64_t seed = 1;
  bool record_run = true;          // keep x(k) and x_i(k|k) of run 0
  gain::SynthesisOptions synthesis; // used by redesign-gain failures
};

/// Monte-Carlo estimation record. Sensor columns use original ids; a sensor
/// removed at time k_f has no MSE from k_f on.
struct SimTrace {
  int horizon = 0;
  int runs = 0;
  int state_count = 0;
  int sensor_count = 0;              // at k = 0
  std::uint64_t seed = 0;
  std::string scenario = "none";
  std::string policy = "redesign-gain";
  double rho_pre = 0.0;
  std::optional<double> rho_post;
  std::vector<FailureOutcome> failures;

  Matrix mse;                        // horizon x sensor_count, row k-1
  std::vector<int> active_until;     // last step with an estimate per sensor
  std::vector<long long> rounds;     // communication rounds per run

  // Run 0 record, k = 0..horizon; posterior[k][i] empty once sensor i is gone.
  std::vector<Vector> true_state;
  std::vector<std::vector<Vector>> posterior;

  bool active(int k, int sensor) const { return k <= active_until[static_cast<std::size_t>(sensor)]; }
  /// e_i(k) = x(k) - x_i(k|k) of the recorded run.
  Vector error(int k, int sensor) const;
};

/// Plant and estimator run for steps k = 1..horizon. x(0) and every
/// x_i(0|0) are drawn N(0, I) from the run's seed; failure events are
/// applied at their time, before that step's exchange.
SimTrace run_simulation(const LtiSystem& sys, const EstimatorConfig& config, const FailureScenario& scenario,
                        const SimulationOptions& options);

}  // namespace resest::sim
