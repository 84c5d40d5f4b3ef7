#include "resest/sim/estimator.hpp"

#include "resest/common/error.hpp"

namespace resest::sim {

EstimatorState estimator_step(const EstimatorState& prev, const weights::ConsensusMatrix& w, const Matrix& a,
                              const observability::SensorSuite& s, const gain::BlockDiagGain& k,
                              const std::vector<Vector>& y, CommunicationCounter* counter) {
  const int m = w.size();
  const int n = static_cast<int>(a.rows());
  if (prev.sensor_count() != m || s.sensor_count() != m || k.sensor_count() != m ||
      static_cast<int>(y.size()) != m)
    throw DimensionMismatch("estimator inputs disagree on the sensor count");
  if (s.state_count() != n || k.state_count() != n) throw DimensionMismatch("estimator inputs disagree on n");

  // The exchange: every sensor sends A x_j(k-1|k-1) to its out-neighbors.
  std::vector<Vector> sent(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    if (prev.posterior[static_cast<std::size_t>(j)].size() != n) throw DimensionMismatch("estimate has wrong size");
    sent[static_cast<std::size_t>(j)] = a * prev.posterior[static_cast<std::size_t>(j)];
  }
  if (counter) ++counter->rounds;

  EstimatorState next;
  next.k = prev.k + 1;
  next.prior.resize(static_cast<std::size_t>(m));
  next.posterior.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Vector prior = Vector::Zero(n);
    for (int j = 0; j < m; ++j)
      if (w(i, j) != 0.0) prior += w(i, j) * sent[static_cast<std::size_t>(j)];

    const auto& meas = s.sensor(i).measures;
    const Vector& yi = y[static_cast<std::size_t>(i)];
    if (yi.size() != static_cast<Eigen::Index>(meas.size())) throw DimensionMismatch("measurement has wrong size");
    Vector lifted = Vector::Zero(n);  // C_i^T (y_i - C_i prior)
    for (std::size_t r = 0; r < meas.size(); ++r) lifted(meas[r]) += yi(static_cast<Eigen::Index>(r)) - prior(meas[r]);

    next.posterior[static_cast<std::size_t>(i)] = prior + k.block(i) * lifted;
    next.prior[static_cast<std::size_t>(i)] = std::move(prior);
  }
  return next;
}

Vector stacked_error(const Vector& x, const EstimatorState& state) {
  const auto n = x.size();
  Vector e(n * state.sensor_count());
  for (int i = 0; i < state.sensor_count(); ++i) e.segment(i * n, n) = x - state.posterior[static_cast<std::size_t>(i)];
  return e;
}

}  // namespace resest::sim
