#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "resest/common/json_io.hpp"
#include "resest/graphs/connectivity.hpp"
#include "resest/sim/failure.hpp"
#include "resest/weights/consensus.hpp"

namespace resest::app {

/// Everything one pipeline run needs. Unset file paths fall back to the
/// preset's built-in objects.
struct PipelineConfig {
  std::string preset = "fig3-nominal";
  std::uint64_t seed = 1;

  // System
  std::optional<std::string> pattern_file;
  std::optional<std::string> matrix_file;   // explicit A, overrides random generation
  double rho_target = 1.05;
  double process_noise = 0.1;
  double measurement_noise = 0.1;

  // Placement
  int q = 1;

  // Network
  std::optional<std::string> network_file;
  bool augment = true;
  graphs::ConnectivityMode connectivity = graphs::ConnectivityMode::node;

  // Weights
  weights::WeightScheme scheme = weights::WeightScheme::random;

  // Gain
  double epsilon = -1.0;    // negative: 1e-3 * mn
  int max_iter = 200;
  int lmi_guard = 64;
  int observability_guard = 1000;
  double margin = 0.0;
  bool fallback = true;

  // Simulation
  int horizon = 100;
  int runs = 20;
  sim::FailureScenario scenario;

  std::string output = "out";

  std::uint64_t system_seed() const;
  std::uint64_t weight_seed() const;
  std::uint64_t simulation_seed() const;

  void validate() const;
};

/// Defaults of the named preset.
PipelineConfig preset_config(const std::string& preset, std::uint64_t seed = 1);

/// Reads a config document on top of the preset it names (or fig3-nominal).
PipelineConfig config_from_json(const Json& doc);
/// Every field, defaults included.
Json config_to_json(const PipelineConfig& c);

std::string to_string(graphs::ConnectivityMode mode);
graphs::ConnectivityMode parse_connectivity_mode(const std::string& name);

}  // namespace resest::app
