#pragma once

#include <string>
#include <vector>

#include "resest/app/config.hpp"
#include "resest/gain/closed_loop.hpp"
#include "resest/gain/design.hpp"
#include "resest/graphs/connectivity.hpp"
#include "resest/observability/structural.hpp"
#include "resest/sim/simulation.hpp"
#include "resest/sim/system.hpp"

namespace resest::app {

/// Plant, sensors, network and weights of one configured run.
struct Instance {
  observability::SparsityPattern pattern;
  Matrix a;
  observability::SensorSuite sensors;
  graphs::DiGraph network;
  std::vector<graphs::Edge> added_links;  // by augmentation
  weights::ConsensusMatrix w{Matrix(), graphs::DiGraph()};
  double process_noise = 0.1;
  double measurement_noise = 0.1;
};

observability::SparsityPattern load_pattern(const PipelineConfig& c);
Matrix build_plant(const PipelineConfig& c, const observability::SparsityPattern& pattern);
observability::SensorSuite build_sensors(const PipelineConfig& c, const observability::SparsityPattern& pattern);
/// File or preset network (a ring when the preset's size does not fit), augmented to q-connectivity when asked.
graphs::Augmentation build_network(const PipelineConfig& c, int sensor_count);
Instance build_instance(const PipelineConfig& c);

gain::SynthesisOptions synthesis_options(const PipelineConfig& c);
sim::SimulationOptions simulation_options(const PipelineConfig& c);
sim::LtiSystem make_system(const Instance& inst);

/// Parent SCCs, equivalence classes and the structural check of a pattern.
Json pattern_report(const observability::SparsityPattern& pattern);
/// SCCs, connectivity and q-certificates of a graph.
Json graph_report(const graphs::DiGraph& g);

Json system_to_json(const Instance& inst);
Json weights_artifact(const weights::ConsensusMatrix& w, weights::WeightScheme scheme);

struct Design {
  Instance instance;
  gain::GainSynthesis synthesis;
  gain::ClosedLoop closed_loop;  // independent re-check of the returned gain
};

/// Throws GainSynthesisError when no Schur-stable gain is found.
Design run_design(const PipelineConfig& c);
/// design.json: counts, parent SCCs, connectivity, observability and rho.
Json design_summary(const PipelineConfig& c, const Design& d);
/// system, sensors, network, weights, gain, synthesis, design and config JSON.
void write_design(const std::string& dir, const PipelineConfig& c, const Design& d);

struct Artifacts {
  Instance instance;
  gain::BlockDiagGain gain;
};

/// Reads the design artifacts from `dir`; throws DimensionMismatch when they
/// disagree with one another.
Artifacts load_artifacts(const std::string& dir);
bool has_artifacts(const std::string& dir);

sim::SimTrace run_simulation(const PipelineConfig& c, const Artifacts& art);
/// simulation.csv and simulation.json.
void write_simulation(const std::string& dir, const PipelineConfig& c, const sim::SimTrace& trace);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<Check> checks;
  bool passed() const;
};

/// Largest MSE over steps [from, to] across active sensors; infinite when
/// any value is non-finite.
double mse_peak(const sim::SimTrace& trace, int from, int to);

/// Designs and simulates the preset into `dir` and checks the outcome.
VerifyResult verify_preset(const std::string& preset, std::uint64_t seed, const std::string& dir);
std::string format_checks(const std::string& preset, const VerifyResult& r);

}  // namespace resest::app
