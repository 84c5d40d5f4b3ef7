#include "resest/sim/system.hpp"

#include <Eigen/Eigenvalues>

#include "resest/common/error.hpp"
#include "resest/gain/spectral.hpp"

namespace resest::sim {

namespace {

Matrix psd_factor(const Matrix& cov) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (cov + cov.transpose()));
  const Vector& ev = eig.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() < -1e-12 * (1.0 + ev.cwiseAbs().maxCoeff()))
    throw InvalidInput("process noise covariance is not positive semidefinite");
  return eig.eigenvectors() * ev.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace

LtiSystem::LtiSystem(Matrix a, double process_variance, double measurement_variance)
    : a_(std::move(a)), r_default_(measurement_variance) {
  if (process_variance < 0.0) throw InvalidInput("process noise variance must be nonnegative");
  q_ = process_variance * Matrix::Identity(a_.rows(), a_.rows());
  q_factor_ = std::sqrt(process_variance) * Matrix::Identity(a_.rows(), a_.rows());
  validate();
}

LtiSystem::LtiSystem(Matrix a, Matrix process_noise_cov, std::vector<double> measurement_variances,
                     double default_measurement_variance)
    : a_(std::move(a)), q_(std::move(process_noise_cov)), r_(std::move(measurement_variances)),
      r_default_(default_measurement_variance) {
  if (q_.rows() != a_.rows() || q_.cols() != a_.rows())
    throw DimensionMismatch("process noise covariance must be n x n");
  q_factor_ = psd_factor(q_);
  validate();
}

void LtiSystem::validate() {
  if (a_.rows() != a_.cols() || a_.rows() == 0) throw DimensionMismatch("A must be square and nonempty");
  for (Eigen::Index i = 0; i < a_.rows(); ++i)
    if (a_(i, i) == 0.0) throw InvalidInput("A needs nonzero diagonal entries");
  if (r_default_ < 0.0) throw InvalidInput("measurement noise variance must be nonnegative");
  for (double r : r_)
    if (r < 0.0) throw InvalidInput("measurement noise variance must be nonnegative");
}

double LtiSystem::measurement_variance(int sensor) const {
  if (sensor >= 0 && static_cast<std::size_t>(sensor) < r_.size()) return r_[static_cast<std::size_t>(sensor)];
  return r_default_;
}

LtiSystem LtiSystem::noiseless() const { return LtiSystem(a_, 0.0, 0.0); }

Vector step_plant(const LtiSystem& sys, const Vector& x, Rng& rng) {
  if (x.size() != sys.state_count()) throw DimensionMismatch("state vector does not match A");
  std::normal_distribution<double> normal;
  Vector z(x.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  return sys.a() * x + sys.process_noise_factor() * z;
}

std::vector<Vector> measure(const LtiSystem& sys, const observability::SensorSuite& s, const Vector& x, Rng& rng,
                            const std::vector<int>& sensor_ids) {
  if (x.size() != s.state_count()) throw DimensionMismatch("state vector does not match the sensor suite");
  if (!sensor_ids.empty() && static_cast<int>(sensor_ids.size()) != s.sensor_count())
    throw DimensionMismatch("sensor id map does not match the suite");
  std::normal_distribution<double> normal;
  std::vector<Vector> y;
  y.reserve(static_cast<std::size_t>(s.sensor_count()));
  for (int i = 0; i < s.sensor_count(); ++i) {
    const auto& meas = s.sensor(i).measures;
    const double sd = std::sqrt(sys.measurement_variance(sensor_ids.empty() ? i : sensor_ids[static_cast<std::size_t>(i)]));
    Vector yi(static_cast<Eigen::Index>(meas.size()));
    for (std::size_t r = 0; r < meas.size(); ++r) yi(static_cast<Eigen::Index>(r)) = x(meas[r]) + sd * normal(rng);
    y.push_back(std::move(yi));
  }
  return y;
}

Matrix random_plant(const observability::SparsityPattern& pattern, double rho_target, Rng& rng) {
  if (!pattern.is_square()) throw InvalidInput("plant pattern must be square");
  if (!(rho_target > 0.0)) throw InvalidInput("spectral radius target must be positive");
  Matrix a = observability::random_realization(pattern, rng);
  const double rho = gain::spectral_radius(a);
  if (!(rho > 0.0)) throw InvalidInput("random plant has zero spectral radius");
  return a * (rho_target / rho);
}

}  // namespace resest::sim
