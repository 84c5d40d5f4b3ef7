#include "resest/graphs/scc.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace resest::graphs {

std::vector<int> SccDecomposition::parent_components() const {
  std::vector<int> ids;
  for (int c = 0; c < component_count(); ++c)
    if (parent_flags[static_cast<std::size_t>(c)]) ids.push_back(c);
  return ids;
}

SccDecomposition scc_decompose(const DiGraph& g) {
  const int n = g.node_count();
  constexpr int kUnvisited = -1;
  std::vector<int> index(static_cast<std::size_t>(n), kUnvisited);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<NodeId> stack;
  std::vector<std::vector<NodeId>> raw;

  // Explicit DFS frames: (node, position in its successor list).
  std::vector<std::pair<NodeId, std::size_t>> frames;
  int counter = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& succ = g.out_neighbors(v);
      const auto vi = static_cast<std::size_t>(v);
      if (pos < succ.size()) {
        const NodeId w = succ[pos++];
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] == kUnvisited) {
          index[wi] = low[wi] = counter++;
          stack.push_back(w);
          on_stack[wi] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[wi]) {
          low[vi] = std::min(low[vi], index[wi]);
        }
        continue;
      }
      if (low[vi] == index[vi]) {
        std::vector<NodeId> comp;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        raw.push_back(std::move(comp));
      }
      const NodeId finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const auto pi = static_cast<std::size_t>(frames.back().first);
        low[pi] = std::min(low[pi], low[static_cast<std::size_t>(finished)]);
      }
    }
  }

  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  SccDecomposition d;
  d.components = std::move(raw);
  d.component_of.assign(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < d.component_count(); ++c)
    for (NodeId v : d.components[static_cast<std::size_t>(c)])
      d.component_of[static_cast<std::size_t>(v)] = c;

  d.condensation = DiGraph(d.component_count(), true);
  for (const auto& [i, j] : g.edges()) {
    const int ci = d.component_of[static_cast<std::size_t>(i)];
    const int cj = d.component_of[static_cast<std::size_t>(j)];
    if (ci != cj) d.condensation.add_edge(ci, cj);
  }
  d.parent_flags.resize(static_cast<std::size_t>(d.component_count()));
  for (int c = 0; c < d.component_count(); ++c)
    d.parent_flags[static_cast<std::size_t>(c)] = d.condensation.out_degree(c) == 0;
  return d;
}

bool is_strongly_connected(const DiGraph& g) {
  const int n = g.node_count();
  if (n <= 1) return true;
  const auto fwd = reachable_from(g, 0);
  const auto bwd = reaching(g, 0);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

namespace {

template <typename Next>
std::vector<bool> bfs(int n, NodeId start, Next next) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<NodeId> queue{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : next(v)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<bool> reachable_from(const DiGraph& g, NodeId source) {
  return bfs(g.node_count(), source,
             [&](NodeId v) -> const std::vector<NodeId>& { return g.out_neighbors(v); });
}

std::vector<bool> reaching(const DiGraph& g, NodeId target) {
  return bfs(g.node_count(), target,
             [&](NodeId v) -> const std::vector<NodeId>& { return g.in_neighbors(v); });
}

}  // namespace resest::graphs
