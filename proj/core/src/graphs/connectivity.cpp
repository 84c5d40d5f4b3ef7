#include "resest/graphs/connectivity.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

#include "resest/common/error.hpp"
#include "resest/common/linalg.hpp"
#include "resest/graphs/maxflow.hpp"
#include "resest/graphs/scc.hpp"

namespace resest::graphs {
namespace {

// Node v splits into in = 2v and out = 2v + 1.
constexpr int in_node(NodeId v) { return 2 * v; }
constexpr int out_node(NodeId v) { return 2 * v + 1; }

}  // namespace

NodeCut node_connectivity(const DiGraph& g) {
  const int n = g.node_count();
  NodeCut result;
  if (n <= 1 || !is_strongly_connected(g)) return result;

  FlowNetwork net(2 * n);
  std::vector<int> split_arc(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) split_arc[static_cast<std::size_t>(v)] = net.add_arc(in_node(v), out_node(v), 1);
  for (const auto& [i, j] : g.edges()) net.add_arc(out_node(i), in_node(j), FlowNetwork::kInfinite);

  int best = n - 1;
  bool found = false;
  std::vector<NodeId> best_cut;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t || g.has_edge(s, t)) continue;
      net.reset();
      const int flow = net.max_flow(out_node(s), in_node(t), best + (found ? 0 : 1));
      if (!found || flow < best) {
        const auto side = net.min_cut_source_side();
        std::vector<NodeId> cut;
        for (NodeId v = 0; v < n; ++v)
          if (side[static_cast<std::size_t>(in_node(v))] && !side[static_cast<std::size_t>(out_node(v))]) cut.push_back(v);
        if (static_cast<int>(cut.size()) == flow) {
          best = flow;
          best_cut = std::move(cut);
          found = true;
        }
      }
    }
  }
  if (!found) {
    // Every ordered pair is adjacent: complete digraph.
    result.connectivity = n - 1;
    for (NodeId v = 1; v < n; ++v) result.cut.push_back(v);
    return result;
  }
  result.connectivity = best;
  result.cut = std::move(best_cut);
  return result;
}

LinkCut link_connectivity(const DiGraph& g) {
  const int n = g.node_count();
  LinkCut result;
  if (n <= 1 || !is_strongly_connected(g)) return result;

  FlowNetwork net(n);
  std::vector<int> arc_ids;
  const auto edges = g.edges();
  for (const auto& [i, j] : edges) arc_ids.push_back(net.add_arc(i, j, 1));

  int best = FlowNetwork::kInfinite;
  std::vector<bool> best_side;
  auto consider = [&](NodeId s, NodeId t) {
    net.reset();
    const int flow = net.max_flow(s, t, best);
    if (flow < best) {
      best = flow;
      best_side = net.min_cut_source_side();
    }
  };
  for (NodeId t = 1; t < n; ++t) {
    consider(0, t);
    consider(t, 0);
  }
  result.connectivity = best;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& [i, j] = edges[k];
    if (best_side[static_cast<std::size_t>(i)] && !best_side[static_cast<std::size_t>(j)]) result.cut.push_back(edges[k]);
  }
  // Undirected links are removed as a whole; list each once as (low, high).
  if (!g.directed()) {
    for (auto& e : result.cut)
      if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(result.cut.begin(), result.cut.end());
    result.cut.erase(std::unique(result.cut.begin(), result.cut.end()), result.cut.end());
  }
  return result;
}

int min_degree(const DiGraph& g) {
  if (g.node_count() == 0) return 0;
  int d = g.node_count();
  for (NodeId v = 0; v < g.node_count(); ++v) d = std::min({d, g.in_degree(v), g.out_degree(v)});
  return d;
}

double algebraic_connectivity(const DiGraph& g) {
  if (!g.is_symmetric()) throw InvalidInput("algebraic connectivity requires an undirected graph");
  const int n = g.node_count();
  if (n < 2) return 0.0;
  Matrix laplacian = Matrix::Zero(n, n);
  for (const auto& [i, j] : g.edges()) {
    laplacian(i, j) = -1.0;
    laplacian(i, i) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(laplacian, Eigen::EigenvaluesOnly);
  return std::max(0.0, eig.eigenvalues()(1));
}

ConnectivityReport connectivity_report(const DiGraph& g) {
  ConnectivityReport r;
  auto nodes = node_connectivity(g);
  auto links = link_connectivity(g);
  r.node_connectivity = nodes.connectivity;
  r.node_cut = std::move(nodes.cut);
  r.link_connectivity = links.connectivity;
  r.link_cut = std::move(links.cut);
  r.min_degree = min_degree(g);
  if (g.is_symmetric()) r.algebraic_connectivity = algebraic_connectivity(g);
  return r;
}

QCheck is_q_node_connected(const DiGraph& g, int q) {
  if (q < 0) throw InvalidInput("q must be non-negative");
  if (q >= g.node_count() - 1)
    throw InvalidInput("q = " + std::to_string(q) + " would leave at most one node of " +
                       std::to_string(g.node_count()));
  QCheck check;
  const auto nodes = node_connectivity(g);
  check.holds = nodes.connectivity > q;
  if (!check.holds) check.violating_nodes = nodes.cut;
  return check;
}

QCheck is_q_link_connected(const DiGraph& g, int q) {
  if (q < 0) throw InvalidInput("q must be non-negative");
  QCheck check;
  const auto links = link_connectivity(g);
  check.holds = links.connectivity > q;
  if (!check.holds) check.violating_links = links.cut;
  return check;
}

}  // namespace resest::graphs
