#include "resest/observability/numeric.hpp"

#include <Eigen/SVD>

#include "resest/common/error.hpp"
#include "resest/graphs/scc.hpp"
#include "resest/observability/structural.hpp"

namespace resest::observability {

int numeric_observability_rank(const Matrix& a, const Matrix& c, double tol) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("A must be square");
  if (c.cols() != n) throw DimensionMismatch("C must have as many columns as A");
  Matrix basis(n, 0);
  Matrix block = c.transpose();
  while (block.cols() > 0 && basis.cols() < n) {
    Eigen::JacobiSVD<Matrix> raw(block);
    const double ref = raw.singularValues().size() ? raw.singularValues()(0) : 0.0;
    if (ref == 0.0) break;
    Matrix projected = block;
    for (int pass = 0; pass < 2 && basis.cols() > 0; ++pass)
      projected -= basis * (basis.transpose() * projected);
    Eigen::JacobiSVD<Matrix> svd(projected, Eigen::ComputeThinU);
    Eigen::Index keep = 0;
    while (keep < svd.singularValues().size() && svd.singularValues()(keep) > tol * ref) ++keep;
    keep = std::min(keep, n - basis.cols());
    if (keep == 0) break;
    Matrix fresh = svd.matrixU().leftCols(keep);
    if (basis.cols() > 0) {
      fresh -= basis * (basis.transpose() * fresh);
      Eigen::HouseholderQR<Matrix> qr(fresh);
      fresh = qr.householderQ() * Matrix::Identity(n, keep);
    }
    Matrix grown(n, basis.cols() + keep);
    grown << basis, fresh;
    basis = std::move(grown);
    block = a.transpose() * fresh;
  }
  return static_cast<int>(basis.cols());
}

int numeric_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int r = 0;
  while (r < s.size() && s(r) > tol * s(0)) ++r;
  return r;
}

DistributedObservability distributed_observability_check(const weights::ConsensusMatrix& w,
                                                         const Matrix& a, const SensorSuite& s,
                                                         int guard) {
  const int m = w.size();
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw DimensionMismatch("A must be square");
  if (s.sensor_count() != m) throw DimensionMismatch("W and the sensor suite disagree on m");
  if (s.state_count() != n) throw DimensionMismatch("A and the sensor suite disagree on n");

  DistributedObservability r;
  r.dimension = m * n;
  r.network_strongly_connected = w.is_irreducible();
  r.system_full_rank = numeric_rank(a) == n;
  const auto pattern = SparsityPattern::of(a);
  r.parent_coverage = pattern.has_full_diagonal() && check_structural_observability(pattern, s);
  r.structural_proxy = r.network_strongly_connected && r.system_full_rank && r.parent_coverage;

  if (r.dimension <= guard) {
    // Rows of D_C that can be nonzero are exactly the measured coordinates.
    std::vector<Eigen::Index> rows;
    for (int i = 0; i < m; ++i)
      for (int x : s.sensor(i).measures) rows.push_back(static_cast<Eigen::Index>(i) * n + x);
    Matrix dc = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), r.dimension);
    for (std::size_t k = 0; k < rows.size(); ++k) dc(static_cast<Eigen::Index>(k), rows[k]) = 1.0;
    r.rank = numeric_observability_rank(kron(w.matrix(), a), dc);
    r.dense_checked = true;
    r.observable = *r.rank == r.dimension;
  } else {
    r.guard_exceeded = true;
    r.observable = r.structural_proxy;
  }
  return r;
}

}  // namespace resest::observability
