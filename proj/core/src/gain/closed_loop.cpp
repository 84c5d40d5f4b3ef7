#include "resest/gain/closed_loop.hpp"

#include "resest/common/error.hpp"

namespace resest::gain {

int GainEntry::target() const { return sensor * n + row; }
int GainEntry::source() const { return sensor * n + state; }

std::vector<GainEntry> effective_entries(const Matrix& lifted, const observability::SensorSuite& s) {
  const int n = s.state_count();
  std::vector<GainEntry> out;
  for (int i = 0; i < s.sensor_count(); ++i) {
    const Vector sel = s.selector(i);
    for (int c = 0; c < n; ++c) {
      if (sel(c) == 0.0) continue;
      if (lifted.row(i * n + c).isZero(0.0)) continue;
      for (int r = 0; r < n; ++r) out.push_back(GainEntry{i, r, c, n});
    }
  }
  return out;
}

BlockDiagGain gain_from_entries(const std::vector<GainEntry>& entries, const Vector& values, int m, int n) {
  if (values.size() != static_cast<Eigen::Index>(entries.size()))
    throw DimensionMismatch("gain entry count differs from value count");
  BlockDiagGain k(m, n);
  for (std::size_t e = 0; e < entries.size(); ++e)
    k.block(entries[e].sensor)(entries[e].row, entries[e].state) = values(static_cast<Eigen::Index>(e));
  return k;
}

Vector entries_from_gain(const std::vector<GainEntry>& entries, const BlockDiagGain& k) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t e = 0; e < entries.size(); ++e)
    v(static_cast<Eigen::Index>(e)) = k.block(entries[e].sensor)(entries[e].row, entries[e].state);
  return v;
}

SparseMatrix lifted_dynamics(const weights::ConsensusMatrix& w, const Matrix& a) {
  return kron_sparse(w.matrix(), a);
}

SpectralEstimate radius_of(const SparseMatrix& m, const ClosedLoopOptions& options) {
  if (m.rows() <= options.dense_limit) {
    SpectralEstimate est;
    est.radius = spectral_radius(Matrix(m));
    est.converged = true;
    return est;
  }
  return spectral_radius_subspace(m, options.subspace);
}

ClosedLoop assemble_closed_loop(const weights::ConsensusMatrix& w, const Matrix& a,
                                const observability::SensorSuite& s, const BlockDiagGain& k,
                                const ClosedLoopOptions& options) {
  const int m = w.size();
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw DimensionMismatch("A must be square");
  if (s.sensor_count() != m || s.state_count() != n)
    throw DimensionMismatch("sensor suite does not match W and A");
  if (k.sensor_count() != m || k.state_count() != n) throw DimensionMismatch("gain does not match W and A");

  const SparseMatrix lifted = lifted_dynamics(w, a);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < m; ++i) {
    const Vector sel = s.selector(i);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (sel(c) != 0.0 && k.block(i)(r, c) != 0.0) t.emplace_back(i * n + r, i * n + c, k.block(i)(r, c));
  }
  SparseMatrix kdc(m * n, m * n);
  kdc.setFromTriplets(t.begin(), t.end());

  ClosedLoop cl;
  cl.a_hat = lifted - SparseMatrix(kdc * lifted);
  cl.a_hat.prune(0.0);
  const SpectralEstimate est = radius_of(cl.a_hat, options);
  cl.spectral_radius = est.radius;
  cl.dense_radius = cl.a_hat.rows() <= options.dense_limit;
  cl.radius_converged = est.converged;
  return cl;
}

}  // namespace resest::gain
