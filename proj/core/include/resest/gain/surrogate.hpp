#pragma once

#include <cstdint>
#include <vector>

#include "resest/common/linalg.hpp"
#include "resest/gain/block_gain.hpp"
#include "resest/gain/closed_loop.hpp"
#include "resest/observability/sensors.hpp"
#include "resest/weights/consensus.hpp"

namespace resest::gain {

/// Fallback synthesizer: Adam on log sum_{k=1..T} ||A-hat^k V||_F^2 over the
/// effective K entries, V a fixed random probe block. The sum is a smooth
/// stand-in for rho(A-hat)^(2T). A-hat is never formed; products use
/// (I - K D_C)(W (x) A) with the sparse lift.
struct SurrogateOptions {
  int horizon = 30;
  int probes = 8;
  int max_iterations = 4000;
  double learning_rate = 0.02;
  int check_every = 25;
  double margin = 0.0;
  std::uint64_t seed = 1;
  ClosedLoopOptions closed_loop;
};

struct SurrogateCheck {
  int iteration = 0;
  double objective = 0.0;   // log of the probe energy
  double growth = 0.0;      // per-step growth of the probe energy late in the horizon
  double rho = -1.0;        // set when an eigen check ran
};

struct SurrogateDesign {
  BlockDiagGain gain;
  double rho = 0.0;
  bool rho_dense = true;
  int iterations = 0;
  std::vector<SurrogateCheck> history;
};

/// Throws GainSynthesisError (max_iterations) when no checked iterate has
/// rho(A-hat) < 1 - margin.
SurrogateDesign design_gain_surrogate(const weights::ConsensusMatrix& w, const Matrix& a,
                                      const observability::SensorSuite& s, const SurrogateOptions& options = {},
                                      const BlockDiagGain* initial = nullptr);

}  // namespace resest::gain
