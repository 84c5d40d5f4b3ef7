#include "resest/gain/spectral.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "resest/common/error.hpp"
#include "resest/common/rng.hpp"

namespace resest::gain {

double spectral_radius(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("spectral radius needs a square matrix");
  if (a.size() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> eig(a, false);
  if (eig.info() != Eigen::Success) throw Error("eigensolver failed to converge");
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

Matrix orthonormalize(const Matrix& v) {
  Eigen::HouseholderQR<Matrix> qr(v);
  return qr.householderQ() * Matrix::Identity(v.rows(), v.cols());
}

}  // namespace

SpectralEstimate spectral_radius_subspace(const SparseMatrix& a, const SubspaceOptions& options) {
  if (a.rows() != a.cols()) throw DimensionMismatch("spectral radius needs a square matrix");
  const Eigen::Index n = a.rows();
  SpectralEstimate est;
  if (n == 0) return est;
  const Eigen::Index b = std::min<Eigen::Index>(options.block_size, n);

  Rng rng(options.seed);
  std::normal_distribution<double> normal;
  Matrix v(n, b);
  for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = normal(rng);
  v = orthonormalize(v);

  double previous = -1.0;
  int stable = 0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Matrix av = a * v;
    if (it % options.check_every == 0 || it == options.max_iterations) {
      const Matrix h = v.transpose() * av;
      Eigen::EigenSolver<Matrix> eig(h, false);
      const double radius = eig.eigenvalues().cwiseAbs().maxCoeff();
      est.radius = radius;
      est.iterations = it;
      if (previous >= 0.0 && std::abs(radius - previous) <= options.tolerance * std::max(1.0, radius)) {
        if (++stable >= options.stable_checks) {
          est.converged = true;
          return est;
        }
      } else {
        stable = 0;
      }
      previous = radius;
    }
    if (av.norm() == 0.0) {
      est.radius = 0.0;
      est.iterations = it;
      est.converged = true;
      return est;
    }
    v = orthonormalize(av);
  }
  return est;
}

}  // namespace resest::gain
