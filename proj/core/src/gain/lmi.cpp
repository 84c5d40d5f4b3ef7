#include "resest/gain/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "resest/gain/spectral.hpp"
#include "resest/observability/numeric.hpp"

namespace resest::gain {

double min_eigenvalue(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool is_positive_definite(const Matrix& m) {
  if (m.size() == 0) return true;
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  return ev.minCoeff() > 1e-9 * (1.0 + ev.maxCoeff());
}

LmiProblem LmiProblem::build(const weights::ConsensusMatrix& w, const Matrix& a,
                             const observability::SensorSuite& s) {
  if (a.rows() != a.cols()) throw DimensionMismatch("A must be square");
  if (s.sensor_count() != w.size() || s.state_count() != a.rows())
    throw DimensionMismatch("sensor suite does not match W and A");
  LmiProblem p;
  p.lifted = kron(w.matrix(), a);
  p.sensors = w.size();
  p.states = static_cast<int>(a.rows());
  p.entries = effective_entries(p.lifted, s);
  return p;
}

Matrix LmiProblem::closed_loop(const Vector& k) const {
  Matrix a_hat = lifted;
  for (std::size_t e = 0; e < entries.size(); ++e)
    a_hat.row(entries[e].target()) -= k(static_cast<Eigen::Index>(e)) * lifted.row(entries[e].source());
  return a_hat;
}

Matrix stability_block(const LmiProblem& p, const LmiPoint& x) {
  const int d = p.dimension();
  const Matrix a_hat = p.closed_loop(x.k);
  Matrix f(2 * d, 2 * d);
  f << x.q, a_hat.transpose(), a_hat, x.r;
  return f;
}

Matrix coupling_block(const LmiPoint& x) {
  const Eigen::Index d = x.q.rows();
  Matrix f(2 * d, 2 * d);
  f << x.q, Matrix::Identity(d, d), Matrix::Identity(d, d), x.r;
  return f;
}

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

// Symmetric-matrix coordinates: pairs a <= b, S_ab = alpha (e_a e_b^T + e_b e_a^T).
struct Svec {
  std::vector<int> a, b;
  std::vector<double> alpha;
  int size() const { return static_cast<int>(a.size()); }
};

Svec make_svec(int d) {
  Svec s;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      s.a.push_back(i);
      s.b.push_back(j);
      s.alpha.push_back(i == j ? 0.5 : kSqrtHalf);
    }
  return s;
}

Vector pack(const Svec& sv, const LmiPoint& x) {
  const int nq = sv.size();
  Vector v(2 * nq + x.k.size());
  for (int i = 0; i < nq; ++i) {
    const double scale = sv.a[i] == sv.b[i] ? 1.0 : 1.0 / sv.alpha[i];
    v(i) = x.q(sv.a[i], sv.b[i]) * scale;
    v(nq + i) = x.r(sv.a[i], sv.b[i]) * scale;
  }
  v.tail(x.k.size()) = x.k;
  return v;
}

LmiPoint unpack(const Svec& sv, const Vector& v, int d) {
  const int nq = sv.size();
  LmiPoint x;
  x.q.resize(d, d);
  x.r.resize(d, d);
  for (int i = 0; i < nq; ++i) {
    const double s = sv.a[i] == sv.b[i] ? 1.0 : sv.alpha[i];
    x.q(sv.a[i], sv.b[i]) = x.q(sv.b[i], sv.a[i]) = s * v(i);
    x.r(sv.a[i], sv.b[i]) = x.r(sv.b[i], sv.a[i]) = s * v(nq + i);
  }
  x.k = v.tail(v.size() - 2 * nq);
  return x;
}

struct Structure {
  Svec sv;
  std::vector<int> source_of;   // per entry: index into sources
  Matrix measured_rows;         // lifted rows at distinct sources
};

Structure make_structure(const LmiProblem& p) {
  Structure st;
  st.sv = make_svec(p.dimension());
  std::map<int, int> index;
  for (const auto& e : p.entries) {
    auto [it, fresh] = index.try_emplace(e.source(), static_cast<int>(index.size()));
    st.source_of.push_back(it->second);
  }
  st.measured_rows.resize(static_cast<Eigen::Index>(index.size()), p.dimension());
  for (const auto& [row, i] : index) st.measured_rows.row(i) = p.lifted.row(row);
  return st;
}

// Largest alpha with X + alpha D still positive definite (infinite when D
// never reaches the boundary); X given by its Cholesky factor.
double max_step(const Eigen::LLT<Matrix>& chol, const Matrix& d) {
  Matrix t = chol.matrixL().solve(d);
  t = chol.matrixL().solve(t.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (t + t.transpose()), Eigen::EigenvaluesOnly);
  const double low = eig.eigenvalues().minCoeff();
  return low < 0.0 ? -1.0 / low : std::numeric_limits<double>::infinity();
}

// g_v = tr(F_v Y1) + tr(F_v Y2) over the linear parts F_v of both blocks.
Vector trace_products(const LmiProblem& p, const Structure& st, const Matrix& y1, const Matrix& y2) {
  const int d = p.dimension();
  const Svec& sv = st.sv;
  const int nq = sv.size();
  const int nk = static_cast<int>(p.entries.size());
  Vector g(2 * nq + nk);
  for (int v = 0; v < nq; ++v) {
    const int a = sv.a[v], b = sv.b[v];
    const double s = 2.0 * sv.alpha[v];
    g(v) = s * (y1(a, b) + y2(a, b));
    g(nq + v) = s * (y1(d + a, d + b) + y2(d + a, d + b));
  }
  const Matrix yw = y1.leftCols(d) * st.measured_rows.transpose();
  for (int e = 0; e < nk; ++e) g(2 * nq + e) = -2.0 * yw(d + p.entries[e].target(), st.source_of[e]);
  return g;
}

// Schur matrix H_vw = sum over both blocks of tr(F_v X F_w Y) for symmetric
// X (dual) and Y (inverse primal slack).
void schur_matrix(const LmiProblem& p, const Structure& st, const Matrix& x1, const Matrix& y1, const Matrix& x2,
                  const Matrix& y2, Matrix& h) {
  const int d = p.dimension();
  const Svec& sv = st.sv;
  const int nq = sv.size();
  const int nk = static_cast<int>(p.entries.size());
  const int total = 2 * nq + nk;
  h.setZero(total, total);

  // tr(S_ab X S_cd Y) / (alpha_ab alpha_cd) for global coordinates a, b, c, d.
  auto sym = [](const Matrix& x, const Matrix& y, int a, int b, int c, int e) {
    return x(b, c) * y(e, a) + x(b, e) * y(c, a) + x(a, c) * y(e, b) + x(a, e) * y(c, b);
  };
  for (int v = 0; v < nq; ++v) {
    const int a = sv.a[v], b = sv.b[v];
    for (int w = 0; w < nq; ++w) {
      const int c = sv.a[w], e = sv.b[w];
      const double s = sv.alpha[v] * sv.alpha[w];
      if (w >= v) {
        h(v, w) = s * (sym(x1, y1, a, b, c, e) + sym(x2, y2, a, b, c, e));
        h(nq + v, nq + w) =
            s * (sym(x1, y1, d + a, d + b, d + c, d + e) + sym(x2, y2, d + a, d + b, d + c, d + e));
      }
      h(v, nq + w) = s * (sym(x1, y1, a, b, d + c, d + e) + sym(x2, y2, a, b, d + c, d + e));
    }
  }

  const Matrix& rows = st.measured_rows;
  const Matrix xw = x1.leftCols(d) * rows.transpose();
  const Matrix yw = y1.leftCols(d) * rows.transpose();
  const Matrix gx = rows * x1.topLeftCorner(d, d) * rows.transpose();
  const Matrix gy = rows * y1.topLeftCorner(d, d) * rows.transpose();
  for (int e = 0; e < nk; ++e) {
    const int t = d + p.entries[e].target();
    const int q = st.source_of[e];
    for (int v = 0; v < nq; ++v) {
      const double s = -sv.alpha[v];
      for (int block = 0; block < 2; ++block) {
        const int a = sv.a[v] + block * d, b = sv.b[v] + block * d;
        h(v + block * nq, 2 * nq + e) =
            s * (x1(b, t) * yw(a, q) + xw(b, q) * y1(a, t) + x1(a, t) * yw(b, q) + xw(a, q) * y1(b, t));
      }
    }
    for (int f = e; f < nk; ++f) {
      const int tf = d + p.entries[f].target();
      const int qf = st.source_of[f];
      h(2 * nq + e, 2 * nq + f) =
          xw(tf, q) * yw(t, qf) + gx(q, qf) * y1(tf, t) + x1(t, tf) * gy(qf, q) + xw(t, qf) * yw(tf, q);
    }
  }
  h.triangularView<Eigen::StrictlyLower>() = h.transpose().triangularView<Eigen::StrictlyLower>();
}

Matrix delta_stability(const LmiProblem& p, const LmiPoint& dx) {
  const int d = p.dimension();
  const Matrix da = p.closed_loop(dx.k) - p.lifted;
  Matrix f(2 * d, 2 * d);
  f << dx.q, da.transpose(), da, dx.r;
  return f;
}

Matrix delta_coupling(const LmiPoint& dx) {
  const Eigen::Index d = dx.q.rows();
  Matrix f = Matrix::Zero(2 * d, 2 * d);
  f.topLeftCorner(d, d) = dx.q;
  f.bottomRightCorner(d, d) = dx.r;
  return f;
}

Matrix inverse(const Eigen::LLT<Matrix>& chol) {
  const Eigen::Index n = chol.matrixLLT().rows();
  return chol.solve(Matrix::Identity(n, n));
}

}  // namespace

SdpStep sdp_feasibility_step(const LmiProblem& p, const LmiPoint& start, const Matrix& q_t, const Matrix& r_t,
                             const SdpOptions& options) {
  const int d = p.dimension();
  if (start.q.rows() != d || start.r.rows() != d || q_t.rows() != d || r_t.rows() != d ||
      start.k.size() != static_cast<Eigen::Index>(p.entries.size()))
    throw DimensionMismatch("LMI point does not match the problem");
  if (!is_positive_definite(q_t) || !is_positive_definite(r_t))
    throw InvalidInput("linearization point must be positive definite");

  const Structure st = make_structure(p);
  const int nq = st.sv.size();
  Vector c = Vector::Zero(2 * nq + static_cast<Eigen::Index>(p.entries.size()));
  for (int v = 0; v < nq; ++v) {
    const double s = 2.0 * st.sv.alpha[v];
    c(v) = s * r_t(st.sv.a[v], st.sv.b[v]);
    c(nq + v) = s * q_t(st.sv.a[v], st.sv.b[v]);
  }

  Vector x = pack(st.sv, start);
  const double start_objective = c.dot(x);
  Matrix s1 = stability_block(p, start), s2 = coupling_block(start);
  Eigen::LLT<Matrix> chol1(s1), chol2(s2);
  if (chol1.info() != Eigen::Success || chol2.info() != Eigen::Success)
    throw SynthesisFailure("LMI subproblem start point is not strictly feasible");

  // blockdiag(R_t, Q_t) / 2 in both blocks is exactly dual feasible.
  Matrix z1 = Matrix::Zero(2 * d, 2 * d);
  z1.topLeftCorner(d, d) = 0.5 * r_t;
  z1.bottomRightCorner(d, d) = 0.5 * q_t;
  Matrix z2 = z1;

  const double nu = 4.0 * d;
  SdpStep out;
  Matrix h;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double gap = (s1.cwiseProduct(z1)).sum() + (s2.cwiseProduct(z2)).sum();
    if (gap <= std::max(options.gap_tolerance, options.relative_gap * std::abs(c.dot(x)))) break;
    const double mu = gap / nu;

    const Matrix s1inv = inverse(chol1), s2inv = inverse(chol2);
    schur_matrix(p, st, z1, s1inv, z2, s2inv, h);
    Eigen::LLT<Matrix> chol_h(h);
    if (chol_h.info() != Eigen::Success) {
      h.diagonal().array() += 1e-14 * (1.0 + h.diagonal().cwiseAbs().maxCoeff());
      chol_h.compute(h);
      if (chol_h.info() != Eigen::Success) break;
    }
    const Vector gs = trace_products(p, st, s1inv, s2inv);
    ++out.newton_steps;

    struct Direction {
      Vector dx;
      Matrix ds1, ds2, dz1, dz2;
      double alpha_p = 0.0, alpha_d = 0.0;
    };
    auto direction = [&](double target) {
      Direction dir;
      dir.dx = chol_h.solve(target * gs - c);
      const LmiPoint dp = unpack(st.sv, dir.dx, d);
      dir.ds1 = delta_stability(p, dp);
      dir.ds2 = delta_coupling(dp);
      auto dz = [&](const Matrix& z, const Matrix& sinv, const Matrix& ds) {
        const Matrix t = z * ds * sinv;
        return Matrix(target * sinv - z - 0.5 * (t + t.transpose()));
      };
      dir.dz1 = dz(z1, s1inv, dir.ds1);
      dir.dz2 = dz(z2, s2inv, dir.ds2);
      Eigen::LLT<Matrix> cz1(z1), cz2(z2);
      dir.alpha_p = std::min(1.0, options.step_fraction * std::min(max_step(chol1, dir.ds1), max_step(chol2, dir.ds2)));
      dir.alpha_d = std::min(1.0, options.step_fraction * std::min(max_step(cz1, dir.dz1), max_step(cz2, dir.dz2)));
      return dir;
    };

    const Direction pred = direction(0.0);
    const double gap_pred = ((s1 + pred.alpha_p * pred.ds1).cwiseProduct(z1 + pred.alpha_d * pred.dz1)).sum() +
                            ((s2 + pred.alpha_p * pred.ds2).cwiseProduct(z2 + pred.alpha_d * pred.dz2)).sum();
    const double sigma = std::clamp(std::pow(std::max(gap_pred, 0.0) / gap, 3.0), 0.0, 1.0);
    const Direction corr = direction(sigma * mu);
    if (corr.alpha_p < 1e-12 && corr.alpha_d < 1e-12) break;

    const Vector trial = x + corr.alpha_p * corr.dx;
    const LmiPoint tp = unpack(st.sv, trial, d);
    Matrix t1 = stability_block(p, tp), t2 = coupling_block(tp);
    Eigen::LLT<Matrix> c1(t1), c2(t2);
    if (c1.info() != Eigen::Success || c2.info() != Eigen::Success) break;
    x = trial;
    s1 = std::move(t1);
    s2 = std::move(t2);
    chol1 = c1;
    chol2 = c2;
    z1 += corr.alpha_d * corr.dz1;
    z2 += corr.alpha_d * corr.dz2;
    z1 = 0.5 * (z1 + z1.transpose());
    z2 = 0.5 * (z2 + z2.transpose());
  }

  out.point = unpack(st.sv, x, d);
  out.objective = c.dot(x);
  out.gap = (s1.cwiseProduct(z1)).sum() + (s2.cwiseProduct(z2)).sum();
  if (out.objective > start_objective) {
    out.point = start;
    out.objective = start_objective;
    out.improved = false;
  }
  out.min_eig_stability = min_eigenvalue(stability_block(p, out.point));
  out.min_eig_coupling = min_eigenvalue(coupling_block(out.point));
  return out;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::spectral_radius: return "spectral_radius";
    case Termination::zero_gain: return "zero_gain";
    case Termination::trace_bound: return "trace_bound";
    case Termination::max_iterations: return "max_iterations";
    case Termination::infeasible_initialization: return "infeasible_initialization";
    case Termination::precondition: return "precondition";
    case Termination::guard_exceeded: return "guard_exceeded";
  }
  return "unknown";
}

LmiDesign design_gain_lmi(const weights::ConsensusMatrix& w, const Matrix& a, const observability::SensorSuite& s,
                          const LmiOptions& options) {
  const int m = w.size();
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw DimensionMismatch("A must be square");
  if (s.sensor_count() != m || s.state_count() != n)
    throw DimensionMismatch("sensor suite does not match W and A");
  const int d = m * n;
  if (d > options.guard)
    throw GainSynthesisError("mn = " + std::to_string(d) + " exceeds the LMI size guard " +
                                 std::to_string(options.guard),
                             Termination::guard_exceeded, {});
  const auto obs = observability::distributed_observability_check(w, a, s, options.observability_guard);
  if (!obs.observable)
    throw GainSynthesisError("distributed observability precondition failed", Termination::precondition, {});

  const LmiProblem problem = LmiProblem::build(w, a, s);
  LmiDesign out;
  const double rho0 = spectral_radius(problem.lifted);
  if (rho0 < 1.0 - options.margin) {
    out.gain = BlockDiagGain(m, n);
    out.termination = Termination::zero_gain;
    out.rho = rho0;
    return out;
  }

  LmiPoint x;
  x.k = Vector::Zero(static_cast<Eigen::Index>(problem.entries.size()));
  bool found = false;
  for (double scale : {1.0, 1e-2, 1e-1, 1e1, 1e2}) {
    x.q = scale * Matrix::Identity(d, d);
    x.r = x.q;
    if (is_positive_definite(stability_block(problem, x)) && is_positive_definite(coupling_block(x))) {
      out.initial_scale = scale;
      found = true;
      break;
    }
  }
  if (!found)
    throw GainSynthesisError("infeasible initialization: no cI with c in {1e-2..1e2} is strictly feasible",
                             Termination::infeasible_initialization, {});

  const double epsilon = options.epsilon < 0.0 ? 1e-3 * d : options.epsilon;
  Matrix q_t = x.q, r_t = x.r;
  for (int t = 1; t <= options.max_iterations; ++t) {
    const SdpStep step = sdp_feasibility_step(problem, x, q_t, r_t, options.sdp);
    LmiIterate it;
    it.t = t;
    it.trace_value = step.objective;
    it.rho = spectral_radius(problem.closed_loop(step.point.k));
    it.min_eig_stability = step.min_eig_stability;
    it.min_eig_coupling = step.min_eig_coupling;
    it.min_eig_q = min_eigenvalue(step.point.q);
    it.min_eig_r = min_eigenvalue(step.point.r);
    it.k = problem.gain(step.point.k);
    out.history.push_back(it);
    if (it.rho < 1.0 - options.margin) {
      out.gain = it.k;
      out.rho = it.rho;
      out.termination = Termination::spectral_radius;
      return out;
    }
    if (step.objective <= 2.0 * d + epsilon)
      throw GainSynthesisError("trace reached 2mn + eps with rho(A-hat) = " + std::to_string(it.rho),
                               Termination::trace_bound, std::move(out.history));
    if (!step.improved)
      throw GainSynthesisError("LMI subproblem made no progress with rho(A-hat) = " + std::to_string(it.rho),
                               Termination::max_iterations, std::move(out.history));
    x = step.point;
    q_t = step.point.q;
    r_t = step.point.r;
  }
  throw GainSynthesisError("not converged within " + std::to_string(options.max_iterations) + " iterations",
                           Termination::max_iterations, std::move(out.history));
}

}  // namespace resest::gain
