#pragma once

#include <vector>

#include "resest/common/linalg.hpp"
#include "resest/gain/block_gain.hpp"
#include "resest/gain/spectral.hpp"
#include "resest/observability/sensors.hpp"
#include "resest/weights/consensus.hpp"

namespace resest::gain {

/// One adjustable gain entry K_sensor(row, state). `state` is a measured
/// state of `sensor`; entries in unmeasured columns never reach A-hat.
struct GainEntry {
  int sensor = 0;
  int row = 0;
  int state = 0;
  int target() const;  // global row index sensor * n + row
  int source() const;  // global row index sensor * n + state
  int n = 0;
};

/// Every entry that can influence A-hat, skipping rows of W (x) A that are
/// identically zero (their column of K multiplies nothing).
std::vector<GainEntry> effective_entries(const Matrix& lifted, const observability::SensorSuite& s);

BlockDiagGain gain_from_entries(const std::vector<GainEntry>& entries, const Vector& values, int m, int n);
Vector entries_from_gain(const std::vector<GainEntry>& entries, const BlockDiagGain& k);

/// A-hat = (I - K D_C)(W (x) A), the error propagation of the estimator.
struct ClosedLoop {
  SparseMatrix a_hat;
  double spectral_radius = 0.0;
  bool dense_radius = true;   // false when estimated by subspace iteration
  bool radius_converged = true;
};

struct ClosedLoopOptions {
  int dense_limit = 1500;     // dense eigensolve up to this dimension
  SubspaceOptions subspace;
};

/// W (x) A as a sparse matrix.
SparseMatrix lifted_dynamics(const weights::ConsensusMatrix& w, const Matrix& a);

ClosedLoop assemble_closed_loop(const weights::ConsensusMatrix& w, const Matrix& a,
                                const observability::SensorSuite& s, const BlockDiagGain& k,
                                const ClosedLoopOptions& options = {});

/// Radius of a sparse matrix, dense below the limit, subspace iteration above.
SpectralEstimate radius_of(const SparseMatrix& m, const ClosedLoopOptions& options = {});

/// rho(A-hat) < 1 - margin.
inline bool verify_schur(const ClosedLoop& cl, double margin = 0.0) {
  return cl.spectral_radius < 1.0 - margin;
}

}  // namespace resest::gain
