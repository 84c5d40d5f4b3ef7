#pragma once

#include <vector>

#include "resest/graphs/digraph.hpp"

namespace resest::graphs {

/// Strongly connected components of a digraph.
///
/// Components are numbered by their smallest member, and each component's
/// node list is ascending. `condensation` has one node per component and an
/// edge c -> d whenever some edge leads from component c into component d.
/// A component is a *parent* when it has no outgoing condensation edge.
struct SccDecomposition {
  std::vector<std::vector<NodeId>> components;
  std::vector<int> component_of;  // node id -> component id
  DiGraph condensation;
  std::vector<bool> parent_flags;

  int component_count() const { return static_cast<int>(components.size()); }
  std::vector<int> parent_components() const;
};

/// Iterative Tarjan; safe on deep graphs.
SccDecomposition scc_decompose(const DiGraph& g);

bool is_strongly_connected(const DiGraph& g);

/// Nodes reachable from `source` (including it).
std::vector<bool> reachable_from(const DiGraph& g, NodeId source);
/// Nodes that can reach `target` (including it).
std::vector<bool> reaching(const DiGraph& g, NodeId target);

}  // namespace resest::graphs
