#pragma once

#include <vector>

#include "resest/common/linalg.hpp"
#include "resest/gain/block_gain.hpp"
#include "resest/observability/sensors.hpp"
#include "resest/weights/consensus.hpp"

namespace resest::sim {

/// Per-sensor a-priori x_i(k|k-1) and a-posteriori x_i(k|k) estimates.
struct EstimatorState {
  std::vector<Vector> prior;
  std::vector<Vector> posterior;
  int k = 0;
  int sensor_count() const { return static_cast<int>(posterior.size()); }
};

/// Counts neighbor-data exchanges. Each estimator step is one round.
struct CommunicationCounter {
  long long rounds = 0;
};

/// One step of the single time-scale estimator:
///   x_i(k|k-1) = sum_j W(i, j) A x_j(k-1|k-1)
///   x_i(k|k)   = x_i(k|k-1) + K_i C_i^T (y_i - C_i x_i(k|k-1))
EstimatorState estimator_step(const EstimatorState& prev, const weights::ConsensusMatrix& w, const Matrix& a,
                              const observability::SensorSuite& s, const gain::BlockDiagGain& k,
                              const std::vector<Vector>& y, CommunicationCounter* counter = nullptr);

/// Stacked error [x - x_1(k|k); ...; x - x_m(k|k)].
Vector stacked_error(const Vector& x, const EstimatorState& state);

}  // namespace resest::sim
