#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resest/common/json_io.hpp"
#include "resest/gain/design.hpp"
#include "resest/observability/pattern.hpp"
#include "resest/weights/consensus.hpp"

namespace resest::sim {

enum class FailureKind { remove_links, remove_nodes };
enum class GainPolicy { keep_gain, redesign_gain };
std::string to_string(GainPolicy p);
GainPolicy parse_gain_policy(const std::string& name);

/// Failure applied just before the estimator step at `time`. Node ids are
/// the original sensor ids; link endpoints too.
struct FailureEvent {
  int time = 0;
  FailureKind kind = FailureKind::remove_links;
  std::vector<graphs::Edge> links;
  std::vector<int> nodes;
};

struct FailureScenario {
  std::string name = "none";
  std::vector<FailureEvent> events;
  GainPolicy policy = GainPolicy::redesign_gain;
  weights::RepairPolicy repair = weights::RepairPolicy::absorb_into_diagonal;

  /// Events sorted by time, within [1, horizon], removals leaving >= 1 sensor.
  void validate(int horizon, int sensor_count) const;
};

/// What the estimator runs with. `sensor_ids[i]` is the original id of
/// the sensor now at position i.
struct EstimatorConfig {
  weights::ConsensusMatrix w;
  observability::SensorSuite s;
  gain::BlockDiagGain k;
  std::vector<int> sensor_ids;
};

EstimatorConfig initial_config(weights::ConsensusMatrix w, observability::SensorSuite s, gain::BlockDiagGain k);

struct FailureOutcome {
  EstimatorConfig config;
  bool strongly_connected = false;
  bool structurally_observable = false;
  bool redesigned = false;
  bool redesign_failed = false;  // redesign requested but no stable gain found; old K kept
  std::string note;
  double rho = 0.0;              // of the post-failure closed loop
  bool rho_dense = true;
};

/// Removes the event's links or sensors, repairs W, compacts C_i and K_i
/// blocks for removed sensors and, under redesign-gain, reruns synthesis on
/// the reduced instance. Failures that break connectivity are applied
/// anyway and flagged.
FailureOutcome apply_failure(const Matrix& a, const EstimatorConfig& config, const FailureEvent& event,
                             GainPolicy policy, weights::RepairPolicy repair = weights::RepairPolicy::absorb_into_diagonal,
                             const gain::SynthesisOptions& synthesis = {});

Json scenario_to_json(const FailureScenario& s);
FailureScenario scenario_from_json(const Json& doc);

}  // namespace resest::sim
