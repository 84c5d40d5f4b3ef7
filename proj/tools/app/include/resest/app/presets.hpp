#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resest/graphs/digraph.hpp"
#include "resest/observability/pattern.hpp"
#include "resest/observability/sensors.hpp"
#include "resest/sim/failure.hpp"
#include "resest/weights/consensus.hpp"

namespace resest::app {

/// 7 states: parent SCCs {0,1}, {2,3}, {4,5} (two-cycles) and a non-parent
/// state 6 driving 0, 2 and 4. Full diagonal.
observability::SparsityPattern fig3_pattern();
/// K_{3,3} on sensors {0,3,4} | {1,2,5}; kappa = e = 3.
graphs::DiGraph fig3_network();
/// The three links removed in the link-failure preset.
std::vector<graphs::Edge> fig3_failed_links();

/// 5 states: chain 0 -> 1 -> 2 feeding the parent SCC {2,3,4} (a 3-cycle).
observability::SparsityPattern fig2_pattern();
/// y1 measures state 2, y2 measures state 4 (equivalent outputs).
observability::SensorSuite fig2_sensors();
/// 3-cube on 8 nodes; kappa = e = 3.
graphs::DiGraph fig2_network();

/// `copies` replicas of the 7-state pattern, state 6 of replica r driving
/// state 0 of replica r + 1 (mod copies).
observability::SparsityPattern replicated_pattern(int copies);
/// Undirected circulant graph: i ~ i +- o (mod n) for every offset o.
graphs::DiGraph circulant_network(int n, const std::vector<int>& offsets);

struct Preset {
  std::string name;
  std::string description;
  observability::SparsityPattern pattern;
  double rho_target = 1.05;
  int q = 1;
  graphs::DiGraph network;
  weights::WeightScheme scheme = weights::WeightScheme::metropolis;
  std::optional<observability::SensorSuite> sensors;  // unset: place q + 1 per parent SCC
  sim::FailureScenario scenario;
  int horizon = 100;
  int runs = 20;
};

std::vector<std::string> preset_names();
/// Throws InvalidInput for unknown names. `seed` only picks the removed
/// sensor of the node-failure preset.
Preset make_preset(const std::string& name, std::uint64_t seed = 1);

}  // namespace resest::app
