#pragma once

// Brute-force reference implementations used by the tests. Each one is
// written from the definition, independent of the library algorithm it
// checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "resest/graphs/digraph.hpp"

namespace oracle {

using resest::graphs::DiGraph;
using resest::graphs::Edge;

/// Reachability matrix by repeated relaxation (Floyd-Warshall closure).
inline std::vector<std::vector<bool>> closure(const DiGraph& g) {
  const int n = g.node_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    r[i][i] = true;
    for (int j : g.out_neighbors(i)) r[i][j] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (r[i][k])
        for (int j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

/// Strong connectivity of the subgraph on nodes with alive[v], using an
/// explicit adjacency test so that removed arcs can be masked too.
inline bool strongly_connected_masked(int n, const std::function<bool(int, int)>& arc,
                                      const std::vector<bool>& alive) {
  int start = -1;
  int count = 0;
  for (int v = 0; v < n; ++v)
    if (alive[v]) {
      if (start < 0) start = v;
      ++count;
    }
  if (count <= 1) return true;
  for (bool forward : {true, false}) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{start};
    seen[start] = true;
    int reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (!alive[v] || seen[v]) continue;
        if (forward ? arc(u, v) : arc(v, u)) {
          seen[v] = true;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    if (reached != count) return false;
  }
  return true;
}

inline bool strongly_connected(const DiGraph& g) {
  return strongly_connected_masked(
      g.node_count(), [&](int u, int v) { return g.has_edge(u, v); }, std::vector<bool>(g.node_count(), true));
}

/// Smallest node set whose removal leaves a graph that is not strongly
/// connected; n - 1 when no such set exists.
inline int node_connectivity(const DiGraph& g) {
  const int n = g.node_count();
  auto arc = [&](int u, int v) { return g.has_edge(u, v); };
  int best = std::max(n - 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    std::vector<bool> alive(n);
    for (int v = 0; v < n; ++v) alive[v] = !(mask >> v & 1u);
    if (!strongly_connected_masked(n, arc, alive)) best = size;
  }
  return best;
}

/// Smallest set of links (undirected) or arcs (directed) whose removal
/// destroys strong connectivity, searched exhaustively by size.
inline int link_connectivity(const DiGraph& g) {
  const int n = g.node_count();
  if (n <= 1) return 0;
  if (!strongly_connected(g)) return 0;
  std::vector<Edge> items;
  for (const auto& [u, v] : g.edges())
    if (g.directed() || u < v) items.push_back({u, v});
  int dmin = n;
  for (int v = 0; v < n; ++v) dmin = std::min({dmin, g.out_degree(v), g.in_degree(v)});
  const int total = static_cast<int>(items.size());
  std::vector<bool> removed(total, false);
  auto removed_arc = [&](int u, int v) {
    for (int i = 0; i < total; ++i) {
      if (!removed[i]) continue;
      const auto [a, b] = items[i];
      if ((a == u && b == v) || (!g.directed() && a == v && b == u)) return true;
    }
    return false;
  };
  auto arc = [&](int u, int v) { return g.has_edge(u, v) && !removed_arc(u, v); };
  const std::vector<bool> alive(n, true);
  for (int k = 1; k < dmin; ++k) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      std::fill(removed.begin(), removed.end(), false);
      for (int i : pick) removed[i] = true;
      if (!strongly_connected_masked(n, arc, alive)) return k;
      int i = k - 1;
      while (i >= 0 && pick[i] == total - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return dmin;
}

/// Erdos-Renyi undirected graph, retried until connected.
inline DiGraph random_connected_undirected(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  while (true) {
    DiGraph g(n, false);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) g.add_edge(i, j);
    if (strongly_connected(g)) return g;
  }
}

inline DiGraph random_digraph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  DiGraph g(n, true);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng)) g.add_edge(i, j);
  return g;
}

/// Rank of the explicitly stacked Kalman matrix [C; CA; ...; CA^{n-1}] by
/// full SVD.
inline int kalman_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c, double tol = 1e-8) {
  const auto n = a.rows();
  Eigen::MatrixXd o(c.rows() * n, n);
  Eigen::MatrixXd block = c;
  for (Eigen::Index k = 0; k < n; ++k) {
    o.middleRows(k * c.rows(), c.rows()) = block;
    block = block * a;
  }
  // Row scaling keeps the powers of A comparable before the rank test.
  for (Eigen::Index r = 0; r < o.rows(); ++r) {
    const double norm = o.row(r).norm();
    if (norm > 0.0) o.row(r) /= norm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(o);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return rank;
}

}  // namespace oracle
