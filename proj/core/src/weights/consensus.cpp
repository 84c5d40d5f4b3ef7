#include "resest/weights/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "resest/common/error.hpp"
#include "resest/common/rng.hpp"
#include "resest/graphs/scc.hpp"

namespace resest::weights {

ConsensusMatrix::ConsensusMatrix(Matrix weights, DiGraph network)
    : w_(std::move(weights)), network_(std::move(network)) {
  if (w_.rows() != w_.cols()) throw DimensionMismatch("consensus matrix must be square");
  if (w_.rows() != network_.node_count())
    throw DimensionMismatch("consensus matrix size differs from network node count");
}

double ConsensusMatrix::row_sum_error() const {
  if (w_.rows() == 0) return 0.0;
  return (w_.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

bool ConsensusMatrix::satisfies_invariants(double tol) const {
  if ((w_.array() < 0.0).any()) return false;
  if (row_sum_error() > tol) return false;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (i != j && w_(i, j) != 0.0 && !network_.has_edge(j, i)) return false;
  return true;
}

bool ConsensusMatrix::is_irreducible() const {
  return graphs::is_strongly_connected(support_graph(w_));
}

DiGraph support_graph(const Matrix& w) {
  DiGraph g(static_cast<int>(w.rows()), true);
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j)
      if (i != j && w(i, j) > 0.0) g.add_edge(j, i);
  return g;
}

ConsensusMatrix uniform_weights(const DiGraph& g, NeighborConvention convention) {
  const int m = g.node_count();
  Matrix w = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& nbrs = g.in_neighbors(i);
    const bool self = convention == NeighborConvention::include_self || nbrs.empty();
    const double share = 1.0 / static_cast<double>(nbrs.size() + (self ? 1 : 0));
    for (int j : nbrs) w(i, j) = share;
    if (self) w(i, i) = share;
  }
  return ConsensusMatrix(std::move(w), g);
}

ConsensusMatrix metropolis_hastings_weights(const DiGraph& g) {
  if (!g.is_symmetric()) throw InvalidInput("Metropolis-Hastings weights require an undirected graph");
  const int m = g.node_count();
  Matrix w = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    double off = 0.0;
    for (int j : g.in_neighbors(i)) {
      w(i, j) = 1.0 / (std::max(g.in_degree(i), g.in_degree(j)) + 1.0);
      off += w(i, j);
    }
    w(i, i) = 1.0 - off;
  }
  return ConsensusMatrix(std::move(w), g);
}

ConsensusMatrix random_stochastic_weights(const DiGraph& g, std::uint64_t seed) {
  const int m = g.node_count();
  Rng rng(seed);
  std::uniform_real_distribution<double> draw(0.1, 1.0);
  Matrix w = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    w(i, i) = draw(rng);
    for (int j : g.in_neighbors(i)) w(i, j) = draw(rng);
    w.row(i) /= w.row(i).sum();
  }
  return ConsensusMatrix(std::move(w), g);
}

namespace {

void repair_row(Matrix& w, int i, const DiGraph& network, RepairPolicy policy) {
  if (policy == RepairPolicy::absorb_into_diagonal) {
    w(i, i) += 1.0 - w.row(i).sum();
    return;
  }
  const auto& nbrs = network.in_neighbors(i);
  w.row(i).setZero();
  const double share = 1.0 / static_cast<double>(nbrs.size() + 1);
  for (int j : nbrs) w(i, j) = share;
  w(i, i) = share;
}

}  // namespace

ConsensusMatrix remove_links(const ConsensusMatrix& w, std::span<const Edge> links, RepairPolicy policy) {
  DiGraph network = w.network().without_edges(links);
  Matrix m = w.matrix();
  std::vector<bool> touched(static_cast<std::size_t>(w.size()), false);
  for (int i = 0; i < w.size(); ++i)
    for (int j = 0; j < w.size(); ++j)
      if (i != j && m(i, j) != 0.0 && !network.has_edge(j, i)) {
        m(i, j) = 0.0;
        touched[static_cast<std::size_t>(i)] = true;
      }
  for (int i = 0; i < w.size(); ++i)
    if (touched[static_cast<std::size_t>(i)]) repair_row(m, i, network, policy);
  return ConsensusMatrix(std::move(m), std::move(network));
}

ConsensusMatrix remove_nodes(const ConsensusMatrix& w, std::span<const int> nodes, RepairPolicy policy) {
  std::vector<int> kept;
  DiGraph network = w.network().without_nodes(nodes, &kept);
  const int k = static_cast<int>(kept.size());
  Matrix m(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) m(a, b) = w(kept[static_cast<std::size_t>(a)], kept[static_cast<std::size_t>(b)]);
  for (int a = 0; a < k; ++a) {
    const double lost = 1.0 - m.row(a).sum();
    if (lost != 0.0) repair_row(m, a, network, policy);
  }
  return ConsensusMatrix(std::move(m), std::move(network));
}

WeightScheme parse_weight_scheme(const std::string& name) {
  if (name == "uniform") return WeightScheme::uniform;
  if (name == "metropolis" || name == "metropolis-hastings") return WeightScheme::metropolis;
  if (name == "random") return WeightScheme::random;
  throw InvalidInput("unknown weight scheme '" + name + "' (expected uniform, metropolis or random)");
}

std::string to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::uniform: return "uniform";
    case WeightScheme::metropolis: return "metropolis";
    case WeightScheme::random: return "random";
  }
  return "unknown";
}

ConsensusMatrix make_weights(const DiGraph& g, WeightScheme scheme, std::uint64_t seed) {
  switch (scheme) {
    case WeightScheme::uniform: return uniform_weights(g);
    case WeightScheme::metropolis: return metropolis_hastings_weights(g);
    case WeightScheme::random: return random_stochastic_weights(g, seed);
  }
  throw InvalidInput("unknown weight scheme");
}

Json weights_to_json(const ConsensusMatrix& w) { return matrix_to_json(w.matrix()); }

}  // namespace resest::weights
