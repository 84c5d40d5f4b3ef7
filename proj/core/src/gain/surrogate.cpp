#include "resest/gain/surrogate.hpp"

#include <cmath>
#include <random>

#include "resest/common/error.hpp"
#include "resest/common/rng.hpp"
#include "resest/gain/lmi.hpp"

namespace resest::gain {

namespace {

struct Operator {
  SparseMatrix lifted;
  std::vector<GainEntry> entries;

  // (I - K D_C) M x
  Matrix apply(const Vector& k, const Matrix& x, Matrix* mx = nullptr) const {
    Matrix z = lifted * x;
    Matrix out = z;
    for (std::size_t e = 0; e < entries.size(); ++e)
      out.row(entries[e].target()) -= k(static_cast<Eigen::Index>(e)) * z.row(entries[e].source());
    if (mx) *mx = std::move(z);
    return out;
  }

  // M^T (I - K D_C)^T y
  Matrix apply_transpose(const Vector& k, const Matrix& y) const {
    Matrix v = y;
    for (std::size_t e = 0; e < entries.size(); ++e)
      v.row(entries[e].source()) -= k(static_cast<Eigen::Index>(e)) * y.row(entries[e].target());
    return lifted.transpose() * v;
  }
};

}  // namespace

SurrogateDesign design_gain_surrogate(const weights::ConsensusMatrix& w, const Matrix& a,
                                      const observability::SensorSuite& s, const SurrogateOptions& options,
                                      const BlockDiagGain* initial) {
  const int m = w.size();
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw DimensionMismatch("A must be square");
  if (s.sensor_count() != m || s.state_count() != n)
    throw DimensionMismatch("sensor suite does not match W and A");
  if (options.horizon < 2 || options.probes < 1) throw InvalidInput("surrogate needs horizon >= 2 and probes >= 1");

  Operator op;
  op.lifted = lifted_dynamics(w, a);
  const Matrix lifted_dense = m * n <= 2000 ? Matrix(op.lifted) : Matrix();
  if (lifted_dense.size() > 0) {
    op.entries = effective_entries(lifted_dense, s);
  } else {
    // Same rule on the sparse lift: skip measured rows that are identically zero.
    for (int i = 0; i < m; ++i) {
      const Vector sel = s.selector(i);
      for (int c = 0; c < n; ++c) {
        if (sel(c) == 0.0) continue;
        const int row = i * n + c;
        if (op.lifted.outerIndexPtr()[row + 1] == op.lifted.outerIndexPtr()[row]) continue;
        for (int r = 0; r < n; ++r) op.entries.push_back(GainEntry{i, r, c, n});
      }
    }
  }

  const Eigen::Index dim = m * n;
  const auto ne = static_cast<Eigen::Index>(op.entries.size());
  Vector k = initial ? entries_from_gain(op.entries, *initial) : Vector::Zero(ne);

  Rng rng(options.seed);
  std::normal_distribution<double> normal;
  Matrix v0(dim, options.probes);
  for (Eigen::Index i = 0; i < v0.size(); ++i) v0.data()[i] = normal(rng);
  v0 /= v0.norm();

  const int horizon = options.horizon;
  std::vector<Matrix> x(static_cast<std::size_t>(horizon + 1));
  std::vector<Matrix> mx(static_cast<std::size_t>(horizon + 1));
  Vector m1 = Vector::Zero(ne), m2 = Vector::Zero(ne);
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-12;

  SurrogateDesign out;
  auto check = [&](int iteration, double objective, double growth) -> bool {
    SurrogateCheck c{iteration, objective, growth, -1.0};
    bool done = false;
    if (growth < 1.0 - options.margin) {
      const ClosedLoop cl = assemble_closed_loop(w, a, s, gain_from_entries(op.entries, k, m, n), options.closed_loop);
      c.rho = cl.spectral_radius;
      if (cl.radius_converged && verify_schur(cl, options.margin)) {
        out.gain = gain_from_entries(op.entries, k, m, n);
        out.rho = cl.spectral_radius;
        out.rho_dense = cl.dense_radius;
        out.iterations = iteration;
        done = true;
      }
    }
    out.history.push_back(c);
    return done;
  };

  for (int iteration = 0; iteration <= options.max_iterations; ++iteration) {
    x[0] = v0;
    std::vector<double> energy(static_cast<std::size_t>(horizon + 1), 0.0);
    double total = 0.0;
    for (int t = 1; t <= horizon; ++t) {
      x[static_cast<std::size_t>(t)] = op.apply(k, x[static_cast<std::size_t>(t - 1)], &mx[static_cast<std::size_t>(t)]);
      energy[static_cast<std::size_t>(t)] = x[static_cast<std::size_t>(t)].squaredNorm();
      total += energy[static_cast<std::size_t>(t)];
    }
    if (!std::isfinite(total) || total <= 0.0) {
      if (total == 0.0) {
        out.gain = gain_from_entries(op.entries, k, m, n);
        out.iterations = iteration;
        out.history.push_back({iteration, -INFINITY, 0.0, 0.0});
        const ClosedLoop cl = assemble_closed_loop(w, a, s, out.gain, options.closed_loop);
        out.rho = cl.spectral_radius;
        out.rho_dense = cl.dense_radius;
        if (verify_schur(cl, options.margin)) return out;
      }
      break;
    }
    const int half = horizon / 2;
    const double growth = std::pow(energy[static_cast<std::size_t>(horizon)] / energy[static_cast<std::size_t>(half)],
                                   0.5 / (horizon - half));
    if (iteration % options.check_every == 0 && check(iteration, std::log(total), growth)) return out;
    if (iteration == options.max_iterations) break;

    // Adjoint of log(total): lambda_T = 2 x_T, lambda_t = 2 x_t + A-hat^T lambda_{t+1}.
    Vector grad = Vector::Zero(ne);
    Matrix lambda = 2.0 * x[static_cast<std::size_t>(horizon)];
    for (int t = horizon; t >= 1; --t) {
      const Matrix& z = mx[static_cast<std::size_t>(t)];
      for (Eigen::Index e = 0; e < ne; ++e)
        grad(e) -= lambda.row(op.entries[static_cast<std::size_t>(e)].target()).dot(
            z.row(op.entries[static_cast<std::size_t>(e)].source()));
      if (t > 1) lambda = 2.0 * x[static_cast<std::size_t>(t - 1)] + op.apply_transpose(k, lambda);
    }
    grad /= total;

    const int step = iteration + 1;
    m1 = beta1 * m1 + (1.0 - beta1) * grad;
    m2 = beta2 * m2 + (1.0 - beta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 / (1.0 - std::pow(beta1, step));
    const double c2 = 1.0 / (1.0 - std::pow(beta2, step));
    k -= options.learning_rate * ((m1 * c1).array() / ((m2 * c2).array().sqrt() + eps)).matrix();
  }
  throw GainSynthesisError("fallback synthesizer did not reach rho(A-hat) < 1", Termination::max_iterations, {});
}

}  // namespace resest::gain
