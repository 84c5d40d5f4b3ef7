#pragma once

#include <vector>

#include "resest/common/linalg.hpp"
#include "resest/common/rng.hpp"
#include "resest/observability/pattern.hpp"
#include "resest/observability/sensors.hpp"

namespace resest::sim {

/// x(k+1) = A x(k) + nu, y_i(k) = C_i x(k) + zeta_i.
class LtiSystem {
 public:
  /// Isotropic noise: process covariance sigma_p I, every sensor variance sigma_m.
  explicit LtiSystem(Matrix a, double process_variance = 0.1, double measurement_variance = 0.1);
  /// Full process covariance; `measurement_variances` indexed by sensor id,
  /// falling back to `default_measurement_variance` past its end.
  LtiSystem(Matrix a, Matrix process_noise_cov, std::vector<double> measurement_variances,
            double default_measurement_variance = 0.1);

  const Matrix& a() const { return a_; }
  int state_count() const { return static_cast<int>(a_.rows()); }
  const Matrix& process_noise_cov() const { return q_; }
  /// F with F F^T = process covariance.
  const Matrix& process_noise_factor() const { return q_factor_; }
  double measurement_variance(int sensor) const;

  /// Same plant with zero process and measurement noise.
  LtiSystem noiseless() const;

 private:
  Matrix a_;
  Matrix q_;
  Matrix q_factor_;
  std::vector<double> r_;
  double r_default_ = 0.1;
  void validate();
};

/// A x + nu, nu ~ N(0, process covariance).
Vector step_plant(const LtiSystem& sys, const Vector& x, Rng& rng);

/// y_i = C_i x + zeta_i for every sensor. `sensor_ids` maps suite positions
/// to the ids whose noise variance applies (identity when empty).
std::vector<Vector> measure(const LtiSystem& sys, const observability::SensorSuite& s, const Vector& x, Rng& rng,
                            const std::vector<int>& sensor_ids = {});

/// Random values uniform in +-[0.5, 1.5] on the pattern, scaled so that
/// rho(A) equals `rho_target`.
Matrix random_plant(const observability::SparsityPattern& pattern, double rho_target, Rng& rng);

}  // namespace resest::sim
