#pragma once

#include <cstdint>

#include "resest/common/linalg.hpp"

namespace resest::gain {

/// max |lambda| from a dense nonsymmetric eigensolve.
double spectral_radius(const Matrix& a);

struct SubspaceOptions {
  int block_size = 24;
  int max_iterations = 20000;
  int check_every = 10;
  double tolerance = 1e-6;   // on successive estimates
  int stable_checks = 3;     // consecutive checks within tolerance
  std::uint64_t seed = 0x5eed;
};

struct SpectralEstimate {
  double radius = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Orthogonal (block power) iteration with Rayleigh-Ritz extraction: the
/// estimate is the largest Ritz value magnitude of V^T A V for the current
/// orthonormal block V. Only products with `a` are needed.
SpectralEstimate spectral_radius_subspace(const SparseMatrix& a, const SubspaceOptions& options = {});

}  // namespace resest::gain
