#pragma once

#include <string>
#include <vector>

#include "resest/common/error.hpp"
#include "resest/common/linalg.hpp"
#include "resest/gain/block_gain.hpp"
#include "resest/gain/closed_loop.hpp"
#include "resest/observability/sensors.hpp"
#include "resest/weights/consensus.hpp"

namespace resest::gain {

/// Matrix counted positive definite iff lambda_min > 1e-9 (1 + lambda_max).
bool is_positive_definite(const Matrix& m);
double min_eigenvalue(const Matrix& m);

/// A-hat(K) = M - sum_e k_e e_target M(source, :), with M = W (x) A.
struct LmiProblem {
  Matrix lifted;
  int sensors = 0;
  int states = 0;
  std::vector<GainEntry> entries;

  static LmiProblem build(const weights::ConsensusMatrix& w, const Matrix& a,
                          const observability::SensorSuite& s);
  int dimension() const { return static_cast<int>(lifted.rows()); }
  Matrix closed_loop(const Vector& k) const;
  BlockDiagGain gain(const Vector& k) const { return gain_from_entries(entries, k, sensors, states); }
};

struct LmiPoint {
  Matrix q;
  Matrix r;
  Vector k;
};

/// [[Q, A-hat^T], [A-hat, R]] and [[Q, I], [I, R]].
Matrix stability_block(const LmiProblem& p, const LmiPoint& x);
Matrix coupling_block(const LmiPoint& x);

struct SdpOptions {
  double gap_tolerance = 5e-8;    // absolute duality gap tr(S Z)
  double relative_gap = 1e-10;    // or this fraction of the objective
  int max_iterations = 80;
  double step_fraction = 0.98;    // of the distance to the PSD boundary
};

struct SdpStep {
  LmiPoint point;
  double objective = 0.0;           // tr(Q_t R + R_t Q)
  double gap = 0.0;                 // final duality gap
  double min_eig_stability = 0.0;
  double min_eig_coupling = 0.0;
  int newton_steps = 0;
  bool improved = true;             // false when the start point was kept
};

/// Minimizes tr(Q_t R + R_t Q) over both strict LMIs with a primal-dual
/// interior-point method (HKM direction, Mehrotra centering), starting from
/// the strictly feasible `start` and an exactly dual-feasible point.
SdpStep sdp_feasibility_step(const LmiProblem& p, const LmiPoint& start, const Matrix& q_t, const Matrix& r_t,
                             const SdpOptions& options = {});

struct LmiIterate {
  int t = 0;
  double trace_value = 0.0;
  double rho = 0.0;
  double min_eig_stability = 0.0;
  double min_eig_coupling = 0.0;
  double min_eig_q = 0.0;
  double min_eig_r = 0.0;
  BlockDiagGain k;
};

enum class Termination {
  spectral_radius,        // rho(A-hat) < 1 - margin
  zero_gain,              // plant error dynamics already contract
  trace_bound,            // trace within 2mn + eps while rho >= 1
  max_iterations,
  infeasible_initialization,
  precondition,           // distributed observability check failed
  guard_exceeded,
};
std::string to_string(Termination t);

struct LmiOptions {
  double epsilon = -1.0;          // negative: 1e-3 * mn
  int max_iterations = 200;
  double margin = 0.0;
  int guard = 64;                 // largest mn handled
  int observability_guard = 1000;
  SdpOptions sdp;
};

struct LmiDesign {
  BlockDiagGain gain;
  std::vector<LmiIterate> history;
  Termination termination = Termination::spectral_radius;
  double rho = 0.0;
  double initial_scale = 0.0;
};

/// Gain synthesis failure that keeps whatever history was produced.
class GainSynthesisError : public SynthesisFailure {
 public:
  GainSynthesisError(const std::string& what, Termination reason, std::vector<LmiIterate> history)
      : SynthesisFailure(what), reason_(reason), history_(std::move(history)) {}
  Termination reason() const { return reason_; }
  const std::vector<LmiIterate>& history() const { return history_; }

 private:
  Termination reason_;
  std::vector<LmiIterate> history_;
};

/// Iterative cone-complementarity design. Returns only gains whose closed
/// loop passes a dense eigensolve; anything else throws GainSynthesisError.
LmiDesign design_gain_lmi(const weights::ConsensusMatrix& w, const Matrix& a, const observability::SensorSuite& s,
                          const LmiOptions& options = {});

}  // namespace resest::gain
