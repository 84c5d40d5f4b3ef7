#pragma once

#include <vector>

#include "resest/observability/pattern.hpp"
#include "resest/observability/sensors.hpp"

namespace resest::observability {

/// States grouped by parent SCC of the system digraph. Within one class any
/// single measured state gives output connectivity to the whole class, so
/// the members are observationally equivalent. States outside every parent
/// SCC never need an output of their own.
struct EquivalenceClasses {
  std::vector<std::vector<int>> classes;  // ascending, ordered by smallest member
  std::vector<int> non_parent_states;
  std::vector<int> class_of_state;        // -1 for non-parent states
};

EquivalenceClasses equivalence_classes(const SparsityPattern& a);

struct PlacementOptions {
  /// When a parent SCC has fewer than q + 1 states, let several sensors
  /// measure the same state (strict mode throws instead).
  bool allow_duplicates = true;
};

/// q + 1 single-state sensors per parent SCC, states taken in ascending
/// order within each class.
SensorSuite place_sensors(const SparsityPattern& a, int q, PlacementOptions options = {});

/// Sufficient condition for full structural-rank systems: every state has a
/// directed path to some measured state.
bool check_structural_observability(const SparsityPattern& a, const SensorSuite& s);

}  // namespace resest::observability
