#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "resest/common/json_io.hpp"
#include "resest/common/linalg.hpp"
#include "resest/common/rng.hpp"
#include "resest/graphs/digraph.hpp"

namespace resest::observability {

/// Zero/nonzero structure of a matrix.
class SparsityPattern {
 public:
  SparsityPattern() = default;
  SparsityPattern(int rows, int cols);
  /// Square pattern with the listed off-diagonal positions and, when
  /// `with_diagonal`, every diagonal position.
  static SparsityPattern square(int n, const std::vector<std::pair<int, int>>& positions,
                                bool with_diagonal = true);
  static SparsityPattern of(const Matrix& m, double tol = 0.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  bool has(int r, int c) const;
  void set(int r, int c, bool value = true);

  bool has_full_diagonal() const;
  std::vector<std::pair<int, int>> nonzeros() const;
  std::size_t nonzero_count() const;

  /// Block-diagonal stacking of `copies` replicas of this pattern.
  SparsityPattern replicated(int copies) const;

  friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<bool> mask_;
};

/// Random values with magnitudes uniform in [low, high] and random signs on
/// every structural nonzero.
Matrix random_realization(const SparsityPattern& p, Rng& rng, double low = 0.5, double high = 1.5);

/// {"n": n, "nonzeros": [[row, col], ...]} for square patterns.
Json pattern_to_json(const SparsityPattern& p);
SparsityPattern pattern_from_json(const Json& doc);

/// System digraph: arc j -> i for every off-diagonal nonzero (i, j), i.e.
/// state j drives state i. Diagonal entries are implicit self-cycles.
graphs::DiGraph system_digraph(const SparsityPattern& a);

}  // namespace resest::observability
