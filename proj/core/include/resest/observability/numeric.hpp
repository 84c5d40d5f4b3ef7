#pragma once

#include <optional>

#include "resest/common/linalg.hpp"
#include "resest/observability/sensors.hpp"
#include "resest/weights/consensus.hpp"

namespace resest::observability {

inline constexpr double kRankTolerance = 1e-8;

/// Dimension of the observable subspace span{C^T, A^T C^T, ...}, i.e. the
/// rank of the Kalman observability matrix, built one orthonormal Krylov
/// block at a time. A new direction counts when its singular value after
/// projection exceeds `tol` times the block's largest singular value.
int numeric_observability_rank(const Matrix& a, const Matrix& c, double tol = kRankTolerance);

inline bool is_observable(const Matrix& a, const Matrix& c) {
  return numeric_observability_rank(a, c) == a.rows();
}

/// Numeric rank of a square matrix with the same relative threshold.
int numeric_rank(const Matrix& m, double tol = kRankTolerance);

/// Outcome of checking (W (x) A, D_C).
struct DistributedObservability {
  bool observable = false;
  int dimension = 0;             // m * n
  bool dense_checked = false;
  bool guard_exceeded = false;   // dense check skipped, proxy only
  std::optional<int> rank;       // set when dense_checked
  // Structural proxy: SC network, full-rank A, every parent SCC measured.
  bool structural_proxy = false;
  bool network_strongly_connected = false;
  bool system_full_rank = false;
  bool parent_coverage = false;
};

/// Dense Kronecker rank check when m * n <= guard, structural proxy always.
/// `observable` follows the dense rank when computed, the proxy otherwise.
DistributedObservability distributed_observability_check(const weights::ConsensusMatrix& w,
                                                         const Matrix& a, const SensorSuite& s,
                                                         int guard = 1000);

}  // namespace resest::observability
