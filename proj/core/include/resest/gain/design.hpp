#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resest/common/json_io.hpp"
#include "resest/gain/lmi.hpp"
#include "resest/gain/surrogate.hpp"
#include "resest/observability/numeric.hpp"

namespace resest::gain {

enum class SynthesisMethod { zero_gain, lmi, surrogate };
std::string to_string(SynthesisMethod m);

struct SynthesisOptions {
  LmiOptions lmi;
  SurrogateOptions surrogate;
  bool allow_fallback = true;
};

struct GainSynthesis {
  BlockDiagGain gain;
  SynthesisMethod method = SynthesisMethod::lmi;
  double rho = 0.0;
  bool rho_dense = true;
  std::optional<Termination> lmi_termination;   // unset when the LMI path did not run
  std::string lmi_message;
  std::vector<LmiIterate> lmi_history;
  std::vector<SurrogateCheck> surrogate_history;
  observability::DistributedObservability observability;
};

/// LMI design when mn fits its guard, the fallback synthesizer when the LMI
/// path is skipped or fails (if allowed). The returned gain always passes
/// verify_schur; otherwise GainSynthesisError is thrown.
GainSynthesis synthesize_gain(const weights::ConsensusMatrix& w, const Matrix& a, const observability::SensorSuite& s,
                              const SynthesisOptions& options = {});

/// {"method", "rho", "rho_dense", "lmi": {"termination", "message", "history": [{t, trace_value, rho, ...}]},
///  "fallback": {"history": [...]}, "observability": {...}}
Json synthesis_report_to_json(const GainSynthesis& g);
Json observability_to_json(const observability::DistributedObservability& o);

}  // namespace resest::gain
