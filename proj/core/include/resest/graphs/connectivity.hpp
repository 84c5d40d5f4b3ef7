#pragma once

#include <optional>
#include <vector>

#include "resest/graphs/digraph.hpp"

namespace resest::graphs {

struct NodeCut {
  int connectivity = 0;          // kappa(G)
  std::vector<NodeId> cut;       // a minimum separating node set
};

struct LinkCut {
  int connectivity = 0;          // e(G)
  std::vector<Edge> cut;         // a minimum separating arc set
};

/// Connectivity summary of a sensor network. For undirected connected
/// graphs lambda2 <= kappa <= e <= d_min.
struct ConnectivityReport {
  int node_connectivity = 0;
  int link_connectivity = 0;
  int min_degree = 0;
  std::optional<double> algebraic_connectivity;  // undirected graphs only
  std::vector<NodeId> node_cut;
  std::vector<Edge> link_cut;
};

/// Vertex connectivity: minimum over ordered pairs (s, t) with no arc s->t of
/// the node-split max-flow from s to t. Graphs that are not strongly
/// connected give 0 with an empty cut; complete digraphs give n-1 and a cut
/// of nodes 1..n-1 (removal leaves a single node).
NodeCut node_connectivity(const DiGraph& g);

/// Arc connectivity: minimum over t of the unit-capacity max-flows 0->t and
/// t->0. For graphs flagged undirected this equals the edge connectivity and
/// the cut lists each link once as (low, high).
LinkCut link_connectivity(const DiGraph& g);

/// Minimum of in- and out-degree over all nodes.
int min_degree(const DiGraph& g);

/// Second smallest eigenvalue of L = D - W for the 0/1 adjacency W.
/// Throws InvalidInput for non-symmetric edge sets. Graphs with fewer than
/// two nodes report 0.
double algebraic_connectivity(const DiGraph& g);

ConnectivityReport connectivity_report(const DiGraph& g);

struct QCheck {
  bool holds = false;
  std::vector<NodeId> violating_nodes;  // node mode, size <= q when !holds
  std::vector<Edge> violating_links;    // link mode, size <= q when !holds
};

/// Strong connectivity survives deleting any q nodes, i.e. kappa > q.
/// Rejects q >= node_count - 1.
QCheck is_q_node_connected(const DiGraph& g, int q);

/// Strong connectivity survives deleting any q links, i.e. e > q.
QCheck is_q_link_connected(const DiGraph& g, int q);

enum class ConnectivityMode { node, link };

struct Augmentation {
  DiGraph graph;
  std::vector<Edge> added;  // every new ordered pair, in insertion order
};

/// Greedy augmentation: while some cut of size <= q exists, join the lowest
/// numbered node of the first sink component of G - cut to the lowest
/// numbered node of the first source component (both directions). Original
/// edges are kept. Throws InvalidInput when q >= node_count - 1.
Augmentation augment_to_q_connected(const DiGraph& g, int q, ConnectivityMode mode);

}  // namespace resest::graphs
