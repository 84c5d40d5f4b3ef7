#pragma once

#include <vector>

namespace resest::graphs {

/// Integer-capacity flow network solved by shortest augmenting paths
/// (Edmonds-Karp). Capacities here are small (unit or "infinite"), so the
/// number of augmentations is bounded by the connectivity being measured.
class FlowNetwork {
 public:
  static constexpr int kInfinite = 1 << 29;

  explicit FlowNetwork(int node_count);

  /// Adds arc u -> v with the given capacity; returns the arc index.
  int add_arc(int from, int to, int capacity);

  /// Maximum s-t flow, stopping early once `limit` is reached. Residual
  /// state is kept so min_cut_source_side() can be queried afterwards.
  int max_flow(int source, int sink, int limit = kInfinite);

  /// Nodes reachable from the source in the residual network of the last
  /// max_flow call.
  std::vector<bool> min_cut_source_side() const;

  /// Restores every arc to its original capacity.
  void reset();

  int node_count() const { return static_cast<int>(head_.size()); }
  int arc_from(int arc) const { return arcs_[static_cast<std::size_t>(arc ^ 1)].to; }
  int arc_to(int arc) const { return arcs_[static_cast<std::size_t>(arc)].to; }

 private:
  struct Arc {
    int to;
    int next;
    int capacity;
    int residual;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  int last_source_ = -1;
};

}  // namespace resest::graphs
