#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace resest::graphs {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

/// Directed graph over nodes 0..node_count-1 with no self-loops and no
/// duplicate edges. An undirected graph is a DiGraph whose edge set is kept
/// symmetric: adding or removing (i, j) also adds or removes (j, i).
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(int node_count, bool directed = true);
  DiGraph(int node_count, std::span<const Edge> edges, bool directed = true);

  int node_count() const { return static_cast<int>(out_.size()); }
  bool directed() const { return directed_; }

  /// Number of stored ordered pairs (an undirected link counts twice).
  std::size_t edge_count() const { return edge_count_; }

  /// Returns true if the edge was new.
  bool add_edge(NodeId from, NodeId to);
  bool remove_edge(NodeId from, NodeId to);
  bool has_edge(NodeId from, NodeId to) const;

  /// Sorted successor / predecessor lists.
  const std::vector<NodeId>& out_neighbors(NodeId v) const { return out_[check(v)]; }
  const std::vector<NodeId>& in_neighbors(NodeId v) const { return in_[check(v)]; }

  int out_degree(NodeId v) const { return static_cast<int>(out_neighbors(v).size()); }
  int in_degree(NodeId v) const { return static_cast<int>(in_neighbors(v).size()); }

  /// All ordered pairs in lexicographic order.
  std::vector<Edge> edges() const;

  /// True when (i, j) present implies (j, i) present.
  bool is_symmetric() const;

  /// Copy with the listed nodes (and their edges) deleted; surviving nodes
  /// are renumbered in ascending order. `kept`, when given, receives the
  /// original id of every surviving node.
  DiGraph without_nodes(std::span<const NodeId> removed,
                        std::vector<NodeId>* kept = nullptr) const;

  /// Copy with the listed edges deleted (both directions when undirected).
  DiGraph without_edges(std::span<const Edge> removed) const;

  /// Induced subgraph on nodes where mask[v] is true, renumbered.
  DiGraph induced(const std::vector<bool>& mask) const;

  friend bool operator==(const DiGraph&, const DiGraph&) = default;

 private:
  std::size_t check(NodeId v) const;
  bool insert_arc(NodeId from, NodeId to);
  bool erase_arc(NodeId from, NodeId to);

  bool directed_ = true;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
};

/// Bidirectional ring 0-1-...-(n-1)-0 flagged undirected.
DiGraph undirected_cycle(int n);
/// Directed ring 0->1->...->(n-1)->0.
DiGraph directed_cycle(int n);
DiGraph complete_graph(int n);
DiGraph undirected_path(int n);

}  // namespace resest::graphs
