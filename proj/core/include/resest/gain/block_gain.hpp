#pragma once

#include <vector>

#include "resest/common/json_io.hpp"
#include "resest/common/linalg.hpp"

namespace resest::gain {

/// K = blockdiag(K_1, ..., K_m) with n x n blocks. Block K_i multiplies the
/// lifted innovation C_i^T (y_i - C_i x), so only its measured columns ever
/// act on the estimate.
class BlockDiagGain {
 public:
  BlockDiagGain() = default;
  BlockDiagGain(int sensor_count, int state_count);  // all zero
  explicit BlockDiagGain(std::vector<Matrix> blocks);

  int sensor_count() const { return static_cast<int>(blocks_.size()); }
  int state_count() const { return n_; }
  int dimension() const { return sensor_count() * n_; }

  const Matrix& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
  Matrix& block(int i) { return blocks_.at(static_cast<std::size_t>(i)); }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  Matrix assembled() const;
  SparseMatrix assembled_sparse() const;

  /// Gain with the listed blocks removed, survivors compacted.
  BlockDiagGain without_blocks(const std::vector<int>& removed) const;

 private:
  int n_ = 0;
  std::vector<Matrix> blocks_;
};

/// {"m": m, "n": n, "blocks": [[row-major n*n floats], ...]}
Json gain_to_json(const BlockDiagGain& k);
BlockDiagGain gain_from_json(const Json& doc);

}  // namespace resest::gain
