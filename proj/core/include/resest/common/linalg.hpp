#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <vector>

namespace resest {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

}  // namespace resest

namespace resest {

/// Dense Kronecker product a (x) b.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Sparse Kronecker product keeping only structural nonzeros of both factors.
inline SparseMatrix kron_sparse(const Matrix& a, const Matrix& b) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0.0) continue;
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        for (Eigen::Index c = 0; c < b.cols(); ++c)
          if (b(r, c) != 0.0)
            triplets.emplace_back(static_cast<int>(i * b.rows() + r), static_cast<int>(j * b.cols() + c),
                                  a(i, j) * b(r, c));
    }
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

}  // namespace resest
