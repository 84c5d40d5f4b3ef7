#include "resest/graphs/maxflow.hpp"

#include <algorithm>
#include <deque>

namespace resest::graphs {

FlowNetwork::FlowNetwork(int node_count) : head_(static_cast<std::size_t>(node_count), -1) {}

int FlowNetwork::add_arc(int from, int to, int capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, head_[static_cast<std::size_t>(from)], capacity, capacity});
  head_[static_cast<std::size_t>(from)] = id;
  arcs_.push_back({from, head_[static_cast<std::size_t>(to)], 0, 0});
  head_[static_cast<std::size_t>(to)] = id + 1;
  return id;
}

void FlowNetwork::reset() {
  for (auto& a : arcs_) a.residual = a.capacity;
}

int FlowNetwork::max_flow(int source, int sink, int limit) {
  last_source_ = source;
  int flow = 0;
  const auto n = head_.size();
  std::vector<int> via(n);
  std::deque<int> queue;
  while (flow < limit) {
    std::fill(via.begin(), via.end(), -1);
    via[static_cast<std::size_t>(source)] = -2;
    queue.assign(1, source);
    while (!queue.empty() && via[static_cast<std::size_t>(sink)] == -1) {
      const int v = queue.front();
      queue.pop_front();
      for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
        const auto& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.residual > 0 && via[static_cast<std::size_t>(arc.to)] == -1) {
          via[static_cast<std::size_t>(arc.to)] = a;
          queue.push_back(arc.to);
        }
      }
    }
    if (via[static_cast<std::size_t>(sink)] == -1) break;
    int push = limit - flow;
    for (int v = sink; v != source;) {
      const int a = via[static_cast<std::size_t>(v)];
      push = std::min(push, arcs_[static_cast<std::size_t>(a)].residual);
      v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
    }
    for (int v = sink; v != source;) {
      const int a = via[static_cast<std::size_t>(v)];
      arcs_[static_cast<std::size_t>(a)].residual -= push;
      arcs_[static_cast<std::size_t>(a ^ 1)].residual += push;
      v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
    }
    flow += push;
  }
  return flow;
}

std::vector<bool> FlowNetwork::min_cut_source_side() const {
  std::vector<bool> seen(head_.size(), false);
  if (last_source_ < 0) return seen;
  std::deque<int> queue{last_source_};
  seen[static_cast<std::size_t>(last_source_)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
      const auto& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.residual > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
        seen[static_cast<std::size_t>(arc.to)] = true;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

}  // namespace resest::graphs
