#include <string>

#include "resest/common/error.hpp"
#include "resest/graphs/connectivity.hpp"
#include "resest/graphs/scc.hpp"

namespace resest::graphs {
namespace {

// Picks a bridging pair across the components of the cut graph `residual`,
// whose node i corresponds to `ids[i]` in `g`. Prefers joining the first
// sink component to the first source component; falls back to the lowest
// pair in distinct components with an arc missing from `g`.
bool pick_bridge(const DiGraph& g, const DiGraph& residual, const std::vector<NodeId>& ids,
                 NodeId& u, NodeId& v) {
  const auto scc = scc_decompose(residual);
  if (scc.component_count() < 2) return false;
  auto missing = [&](NodeId a, NodeId b) { return !g.has_edge(a, b) || !g.has_edge(b, a); };

  int sink = -1;
  int source = -1;
  for (int c = 0; c < scc.component_count(); ++c) {
    if (sink < 0 && scc.condensation.out_degree(c) == 0) sink = c;
    if (source < 0 && scc.condensation.in_degree(c) == 0) source = c;
  }
  if (sink >= 0 && source >= 0 && sink != source) {
    for (NodeId a : scc.components[static_cast<std::size_t>(sink)])
      for (NodeId b : scc.components[static_cast<std::size_t>(source)])
        if (missing(ids[static_cast<std::size_t>(a)], ids[static_cast<std::size_t>(b)])) {
          u = std::min(ids[static_cast<std::size_t>(a)], ids[static_cast<std::size_t>(b)]);
          v = std::max(ids[static_cast<std::size_t>(a)], ids[static_cast<std::size_t>(b)]);
          return true;
        }
  }
  const int n = residual.node_count();
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (scc.component_of[static_cast<std::size_t>(a)] != scc.component_of[static_cast<std::size_t>(b)] &&
          missing(ids[static_cast<std::size_t>(a)], ids[static_cast<std::size_t>(b)])) {
        u = ids[static_cast<std::size_t>(a)];
        v = ids[static_cast<std::size_t>(b)];
        return true;
      }
  return false;
}

}  // namespace

Augmentation augment_to_q_connected(const DiGraph& g, int q, ConnectivityMode mode) {
  const int n = g.node_count();
  if (q < 0) throw InvalidInput("q must be non-negative");
  if (q >= n - 1)
    throw InvalidInput("a " + std::to_string(n) + "-node graph can never be " + std::to_string(q) +
                       "-" + (mode == ConnectivityMode::node ? "node" : "link") + "-connected");
  Augmentation aug{g, {}};
  auto add = [&](NodeId a, NodeId b) {
    if (!aug.graph.has_edge(a, b)) {
      aug.graph.add_edge(a, b);
      aug.added.emplace_back(a, b);
    }
    if (!aug.graph.has_edge(b, a)) {
      aug.graph.add_edge(b, a);
      aug.added.emplace_back(b, a);
    }
  };

  for (;;) {
    const QCheck check = mode == ConnectivityMode::node ? is_q_node_connected(aug.graph, q)
                                                         : is_q_link_connected(aug.graph, q);
    if (check.holds) return aug;

    DiGraph residual;
    std::vector<NodeId> ids;
    if (mode == ConnectivityMode::node) {
      residual = aug.graph.without_nodes(check.violating_nodes, &ids);
    } else {
      residual = aug.graph.without_edges(check.violating_links);
      ids.resize(static_cast<std::size_t>(n));
      for (NodeId i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
    }
    NodeId u = -1;
    NodeId v = -1;
    if (!pick_bridge(aug.graph, residual, ids, u, v))
      throw Error("augmentation stalled: no bridging pair available");
    add(u, v);
  }
}

}  // namespace resest::graphs
