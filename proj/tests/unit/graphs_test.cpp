#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "resest/common/error.hpp"
#include "resest/graphs/connectivity.hpp"
#include "resest/graphs/graph_io.hpp"
#include "resest/graphs/maxflow.hpp"
#include "resest/graphs/scc.hpp"

using namespace resest;
using namespace resest::graphs;

namespace {

DiGraph cube() {
  DiGraph g(8, false);
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b)
      if (v < (v ^ (1 << b))) g.add_edge(v, v ^ (1 << b));
  return g;
}

}  // namespace

TEST(DiGraph, UndirectedEdgesStaySymmetric) {
  DiGraph g(4, false);
  EXPECT_TRUE(g.add_edge(0, 1));
  EXPECT_FALSE(g.add_edge(1, 0));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_EQ(g.edge_count(), 2u);
  g.remove_edge(1, 0);
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_TRUE(g.is_symmetric());
}

TEST(DiGraph, RejectsSelfLoopsAndBadIds) {
  DiGraph g(3);
  EXPECT_THROW(g.add_edge(1, 1), InvalidInput);
  EXPECT_THROW(g.add_edge(0, 3), InvalidInput);
}

TEST(DiGraph, WithoutNodesRenumbers) {
  DiGraph g = directed_cycle(5);
  std::vector<NodeId> kept;
  const std::vector<NodeId> gone{2};
  const DiGraph h = g.without_nodes(gone, &kept);
  EXPECT_EQ(h.node_count(), 4);
  EXPECT_EQ(kept, (std::vector<NodeId>{0, 1, 3, 4}));
  EXPECT_TRUE(h.has_edge(2, 3));   // 3 -> 4 originally
  EXPECT_FALSE(h.has_edge(1, 2));  // 1 -> 2 was cut
}

TEST(Scc, MatchesMutualReachabilitySweep) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> dens(0.05, 0.5);
  for (int trial = 0; trial < 250; ++trial) {
    const DiGraph g = oracle::random_digraph(size(rng), dens(rng), rng);
    const auto d = scc_decompose(g);
    const auto r = oracle::closure(g);
    const int n = g.node_count();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        EXPECT_EQ(d.component_of[i] == d.component_of[j], r[i][j] && r[j][i]) << "trial " << trial;
    // Partition: every node appears in exactly one component.
    std::vector<int> seen(n, 0);
    for (const auto& c : d.components)
      for (int v : c) ++seen[v];
    for (int v = 0; v < n; ++v) EXPECT_EQ(seen[v], 1);
    // Condensation is acyclic: its own SCCs are singletons.
    EXPECT_EQ(scc_decompose(d.condensation).component_count(), d.component_count());
    // Parents have no outgoing condensation edges.
    for (int c = 0; c < d.component_count(); ++c)
      EXPECT_EQ(d.parent_flags[c], d.condensation.out_degree(c) == 0);
    EXPECT_EQ(is_strongly_connected(g), oracle::strongly_connected(g));
  }
}

TEST(Scc, DeepChainDoesNotOverflow) {
  DiGraph g(200000);
  for (int v = 0; v + 1 < g.node_count(); ++v) g.add_edge(v, v + 1);
  const auto d = scc_decompose(g);
  EXPECT_EQ(d.component_count(), 200000);
  EXPECT_EQ(d.parent_components(), std::vector<int>{199999});
}

TEST(MaxFlow, SmallNetwork) {
  FlowNetwork f(4);
  f.add_arc(0, 1, 3);
  f.add_arc(0, 2, 2);
  f.add_arc(1, 2, 1);
  f.add_arc(1, 3, 2);
  f.add_arc(2, 3, 3);
  EXPECT_EQ(f.max_flow(0, 3), 5);
  const auto side = f.min_cut_source_side();
  EXPECT_TRUE(side[0]);
  EXPECT_FALSE(side[3]);
}

TEST(Connectivity, EqualsExhaustiveRemoval) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_real_distribution<double> dens(0.2, 0.8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    const DiGraph g = trial % 2 == 0 ? oracle::random_connected_undirected(n, dens(rng), rng)
                                     : oracle::random_digraph(n, dens(rng), rng);
    const auto nc = node_connectivity(g);
    const auto lc = link_connectivity(g);
    EXPECT_EQ(nc.connectivity, oracle::node_connectivity(g)) << "trial " << trial;
    EXPECT_EQ(lc.connectivity, oracle::link_connectivity(g)) << "trial " << trial;
    // The reported cuts really separate.
    if (nc.connectivity > 0 && nc.connectivity < n - 1)
      EXPECT_FALSE(oracle::strongly_connected(g.without_nodes(nc.cut)));
    if (lc.connectivity > 0) EXPECT_FALSE(oracle::strongly_connected(g.without_edges(lc.cut)));
  }
}

TEST(Connectivity, ChainOnRandomUndirectedGraphs) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(4, 12);
  std::uniform_real_distribution<double> dens(0.2, 0.9);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    const DiGraph g = oracle::random_connected_undirected(n, dens(rng), rng);
    if (g.edge_count() == static_cast<std::size_t>(n * (n - 1))) continue;
    const auto rep = connectivity_report(g);
    ASSERT_TRUE(rep.algebraic_connectivity.has_value());
    EXPECT_LE(*rep.algebraic_connectivity, rep.node_connectivity + 1e-9);
    EXPECT_LE(rep.node_connectivity, rep.link_connectivity);
    EXPECT_LE(rep.link_connectivity, rep.min_degree);
  }
}

TEST(Connectivity, CompleteGraphExceedsFiedlerBound) {
  // lambda2(K_n) = n while kappa(K_n) = n - 1: the lower bound needs a
  // non-complete graph.
  EXPECT_NEAR(algebraic_connectivity(complete_graph(5)), 5.0, 1e-12);
  EXPECT_EQ(node_connectivity(complete_graph(5)).connectivity, 4);
}

TEST(Connectivity, KnownGraphs) {
  EXPECT_EQ(node_connectivity(DiGraph(5, false)).connectivity, 0);
  EXPECT_EQ(link_connectivity(DiGraph(5, false)).connectivity, 0);
  EXPECT_EQ(node_connectivity(cube()).connectivity, 3);
  EXPECT_EQ(link_connectivity(cube()).connectivity, 3);
  EXPECT_EQ(node_connectivity(complete_graph(5)).connectivity, 4);
  EXPECT_EQ(node_connectivity(undirected_cycle(6)).connectivity, 2);
  EXPECT_EQ(node_connectivity(directed_cycle(6)).connectivity, 1);
  // Path graph: lambda2 = 2 - 2 cos(pi / n).
  EXPECT_NEAR(algebraic_connectivity(undirected_path(5)), 2.0 - 2.0 * std::cos(M_PI / 5.0), 1e-12);
  EXPECT_THROW(algebraic_connectivity(directed_cycle(4)), InvalidInput);
}

TEST(Connectivity, QPredicates) {
  const DiGraph g = cube();
  EXPECT_TRUE(is_q_node_connected(g, 2).holds);
  const auto fail = is_q_node_connected(g, 3);
  EXPECT_FALSE(fail.holds);
  EXPECT_EQ(fail.violating_nodes.size(), 3u);
  EXPECT_TRUE(is_q_link_connected(g, 2).holds);
  EXPECT_FALSE(is_q_link_connected(g, 3).holds);
  EXPECT_THROW(is_q_node_connected(g, 7), InvalidInput);
}

TEST(Augment, ReachesRequestedConnectivity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + trial % 6;
    const DiGraph g = oracle::random_connected_undirected(n, 0.25, rng);
    for (int q : {1, 2}) {
      const auto node = augment_to_q_connected(g, q, ConnectivityMode::node);
      EXPECT_GT(oracle::node_connectivity(node.graph), q);
      const auto link = augment_to_q_connected(g, q, ConnectivityMode::link);
      EXPECT_GT(oracle::link_connectivity(link.graph), q);
      for (const auto& [u, v] : g.edges()) EXPECT_TRUE(node.graph.has_edge(u, v));
    }
  }
  EXPECT_TRUE(augment_to_q_connected(cube(), 2, ConnectivityMode::node).added.empty());
  EXPECT_THROW(augment_to_q_connected(DiGraph(3, false), 2, ConnectivityMode::node), InvalidInput);
}

TEST(GraphIo, RoundTrip) {
  const DiGraph g = cube();
  EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  DiGraph d(3);
  d.add_edge(0, 2);
  d.add_edge(2, 1);
  EXPECT_EQ(graph_from_json(graph_to_json(d)), d);
  EXPECT_THROW(graph_from_json(Json{{"nodes", 2}, {"edges", {{0, 5}}}}), InvalidInput);
}
