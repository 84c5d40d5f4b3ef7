#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "resest/common/json_io.hpp"
#include "resest/common/linalg.hpp"
#include "resest/graphs/digraph.hpp"

namespace resest::weights {

using graphs::DiGraph;
using graphs::Edge;

/// Whether a sensor's own previous estimate takes part in its fusion sum.
enum class NeighborConvention { include_self, exclude_self };

/// How a row is repaired after some of its entries lose their link.
enum class RepairPolicy {
  absorb_into_diagonal,  // lost mass moves onto W(i, i)
  uniform_renormalize,   // row becomes uniform over surviving neighbors + self
};

/// Row-stochastic m x m fusion matrix. W(i, j) weighs the estimate that
/// sensor j sends to sensor i, so W(i, j) > 0 for i != j requires the arc
/// j -> i in the network.
class ConsensusMatrix {
 public:
  ConsensusMatrix(Matrix weights, DiGraph network);

  const Matrix& matrix() const { return w_; }
  const DiGraph& network() const { return network_; }
  int size() const { return static_cast<int>(w_.rows()); }
  double operator()(int i, int j) const { return w_(i, j); }

  /// Largest |row sum - 1|.
  double row_sum_error() const;
  /// Nonnegative, row-stochastic within `tol`, and supported on the
  /// network's in-neighborhoods plus the diagonal.
  bool satisfies_invariants(double tol = 1e-12) const;
  /// True iff the digraph of W's off-diagonal pattern is strongly connected.
  bool is_irreducible() const;

 private:
  Matrix w_;
  DiGraph network_;
};

/// W(i, j) = 1 / |N(i)| over in-neighbors (plus i itself by default).
ConsensusMatrix uniform_weights(const DiGraph& g,
                                NeighborConvention convention = NeighborConvention::include_self);

/// Metropolis-Hastings weights on an undirected graph:
/// W(i, j) = 1 / (max(d_i, d_j) + 1) on links, diagonal takes the rest.
ConsensusMatrix metropolis_hastings_weights(const DiGraph& g);

/// Positive uniform(0.1, 1) draws on every allowed entry (diagonal included),
/// each row normalized to sum 1.
ConsensusMatrix random_stochastic_weights(const DiGraph& g, std::uint64_t seed);

/// Network with the given links removed and W repaired to stay stochastic
/// and conforming.
ConsensusMatrix remove_links(const ConsensusMatrix& w, std::span<const Edge> links,
                             RepairPolicy policy = RepairPolicy::absorb_into_diagonal);

/// Deletes sensors (rows, columns and network nodes), compacting ids, and
/// repairs the surviving rows.
ConsensusMatrix remove_nodes(const ConsensusMatrix& w, std::span<const int> nodes,
                             RepairPolicy policy = RepairPolicy::absorb_into_diagonal);

/// Off-diagonal support of W as a digraph (arc j -> i when W(i, j) > 0).
DiGraph support_graph(const Matrix& w);

enum class WeightScheme { uniform, metropolis, random };
WeightScheme parse_weight_scheme(const std::string& name);
std::string to_string(WeightScheme scheme);

ConsensusMatrix make_weights(const DiGraph& g, WeightScheme scheme, std::uint64_t seed);

/// Dense array-of-rows JSON; floats carry 17 significant digits once dumped
/// through dump_json().
Json weights_to_json(const ConsensusMatrix& w);

}  // namespace resest::weights
