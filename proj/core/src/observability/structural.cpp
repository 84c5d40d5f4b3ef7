#include "resest/observability/structural.hpp"

#include <string>

#include "resest/common/error.hpp"
#include "resest/graphs/scc.hpp"

namespace resest::observability {

EquivalenceClasses equivalence_classes(const SparsityPattern& a) {
  if (!a.has_full_diagonal()) throw InvalidInput("system pattern must have a full nonzero diagonal");
  const auto scc = graphs::scc_decompose(system_digraph(a));
  EquivalenceClasses eq;
  eq.class_of_state.assign(static_cast<std::size_t>(a.rows()), -1);
  for (int c = 0; c < scc.component_count(); ++c) {
    if (!scc.parent_flags[static_cast<std::size_t>(c)]) continue;
    const int id = static_cast<int>(eq.classes.size());
    eq.classes.push_back(scc.components[static_cast<std::size_t>(c)]);
    for (int x : eq.classes.back()) eq.class_of_state[static_cast<std::size_t>(x)] = id;
  }
  for (int x = 0; x < a.rows(); ++x)
    if (eq.class_of_state[static_cast<std::size_t>(x)] < 0) eq.non_parent_states.push_back(x);
  return eq;
}

SensorSuite place_sensors(const SparsityPattern& a, int q, PlacementOptions options) {
  if (q < 0) throw InvalidInput("q must be non-negative");
  const auto eq = equivalence_classes(a);
  std::vector<Sensor> sensors;
  for (std::size_t c = 0; c < eq.classes.size(); ++c) {
    const auto& members = eq.classes[c];
    if (static_cast<int>(members.size()) < q + 1 && !options.allow_duplicates)
      throw InvalidInput("parent SCC " + std::to_string(c) + " has " + std::to_string(members.size()) +
                         " states, fewer than q + 1 = " + std::to_string(q + 1));
    for (int k = 0; k <= q; ++k) {
      Sensor s;
      s.measures = {members[static_cast<std::size_t>(k) % members.size()]};
      s.equivalence_class = static_cast<int>(c);
      sensors.push_back(std::move(s));
    }
  }
  return SensorSuite(a.rows(), std::move(sensors));
}

bool check_structural_observability(const SparsityPattern& a, const SensorSuite& s) {
  if (s.state_count() != a.rows()) throw DimensionMismatch("sensor suite and system disagree on n");
  const auto g = system_digraph(a);
  // Reverse search from all measured states at once.
  std::vector<bool> seen(static_cast<std::size_t>(a.rows()), false);
  std::vector<int> frontier;
  for (const auto& sensor : s.sensors())
    for (int x : sensor.measures)
      if (!seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = true;
        frontier.push_back(x);
      }
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    for (int u : g.in_neighbors(v))
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        frontier.push_back(u);
      }
  }
  for (bool b : seen)
    if (!b) return false;
  return true;
}

}  // namespace resest::observability
