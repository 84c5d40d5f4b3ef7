#include "resest/graphs/digraph.hpp"

#include <algorithm>
#include <string>

#include "resest/common/error.hpp"

namespace resest::graphs {

DiGraph::DiGraph(int node_count, bool directed) : directed_(directed) {
  if (node_count < 0) throw InvalidInput("node_count must be non-negative");
  out_.resize(static_cast<std::size_t>(node_count));
  in_.resize(static_cast<std::size_t>(node_count));
}

DiGraph::DiGraph(int node_count, std::span<const Edge> edges, bool directed)
    : DiGraph(node_count, directed) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

std::size_t DiGraph::check(NodeId v) const {
  if (v < 0 || v >= node_count())
    throw InvalidInput("node id " + std::to_string(v) + " out of range [0, " +
                       std::to_string(node_count()) + ")");
  return static_cast<std::size_t>(v);
}

bool DiGraph::insert_arc(NodeId from, NodeId to) {
  auto& succ = out_[static_cast<std::size_t>(from)];
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it != succ.end() && *it == to) return false;
  succ.insert(it, to);
  auto& pred = in_[static_cast<std::size_t>(to)];
  pred.insert(std::lower_bound(pred.begin(), pred.end(), from), from);
  ++edge_count_;
  return true;
}

bool DiGraph::erase_arc(NodeId from, NodeId to) {
  auto& succ = out_[static_cast<std::size_t>(from)];
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it == succ.end() || *it != to) return false;
  succ.erase(it);
  auto& pred = in_[static_cast<std::size_t>(to)];
  pred.erase(std::lower_bound(pred.begin(), pred.end(), from));
  --edge_count_;
  return true;
}

bool DiGraph::add_edge(NodeId from, NodeId to) {
  check(from);
  check(to);
  if (from == to) throw InvalidInput("self-loops are not stored in a DiGraph");
  bool added = insert_arc(from, to);
  if (!directed_) added = insert_arc(to, from) || added;
  return added;
}

bool DiGraph::remove_edge(NodeId from, NodeId to) {
  check(from);
  check(to);
  bool removed = erase_arc(from, to);
  if (!directed_) removed = erase_arc(to, from) || removed;
  return removed;
}

bool DiGraph::has_edge(NodeId from, NodeId to) const {
  const auto& succ = out_[check(from)];
  check(to);
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<Edge> DiGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (NodeId i = 0; i < node_count(); ++i)
    for (NodeId j : out_[static_cast<std::size_t>(i)]) result.emplace_back(i, j);
  return result;
}

bool DiGraph::is_symmetric() const {
  for (NodeId i = 0; i < node_count(); ++i)
    if (out_[static_cast<std::size_t>(i)] != in_[static_cast<std::size_t>(i)]) return false;
  return true;
}

DiGraph DiGraph::induced(const std::vector<bool>& mask) const {
  if (static_cast<int>(mask.size()) != node_count())
    throw DimensionMismatch("node mask size differs from node_count");
  std::vector<NodeId> index(mask.size(), -1);
  int next = 0;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) index[v] = next++;
  DiGraph g(next, directed_);
  for (NodeId i = 0; i < node_count(); ++i) {
    if (!mask[static_cast<std::size_t>(i)]) continue;
    for (NodeId j : out_[static_cast<std::size_t>(i)])
      if (mask[static_cast<std::size_t>(j)])
        g.insert_arc(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(j)]);
  }
  return g;
}

DiGraph DiGraph::without_nodes(std::span<const NodeId> removed,
                               std::vector<NodeId>* kept) const {
  std::vector<bool> mask(static_cast<std::size_t>(node_count()), true);
  for (NodeId v : removed) mask[check(v)] = false;
  if (kept) {
    kept->clear();
    for (NodeId v = 0; v < node_count(); ++v)
      if (mask[static_cast<std::size_t>(v)]) kept->push_back(v);
  }
  return induced(mask);
}

DiGraph DiGraph::without_edges(std::span<const Edge> removed) const {
  DiGraph g = *this;
  for (const auto& [i, j] : removed) g.remove_edge(i, j);
  return g;
}

DiGraph undirected_cycle(int n) {
  DiGraph g(n, false);
  if (n < 2) return g;
  for (int i = 0; i < n; ++i)
    if ((i + 1) % n != i) g.add_edge(i, (i + 1) % n);
  return g;
}

DiGraph directed_cycle(int n) {
  DiGraph g(n, true);
  if (n < 2) return g;
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

DiGraph complete_graph(int n) {
  DiGraph g(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

DiGraph undirected_path(int n) {
  DiGraph g(n, false);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

}  // namespace resest::graphs
