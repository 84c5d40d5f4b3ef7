#include "resest/gain/design.hpp"

namespace resest::gain {

std::string to_string(SynthesisMethod m) {
  switch (m) {
    case SynthesisMethod::zero_gain: return "zero_gain";
    case SynthesisMethod::lmi: return "lmi";
    case SynthesisMethod::surrogate: return "fallback";
  }
  return "unknown";
}

GainSynthesis synthesize_gain(const weights::ConsensusMatrix& w, const Matrix& a, const observability::SensorSuite& s,
                              const SynthesisOptions& options) {
  GainSynthesis out;
  out.observability = observability::distributed_observability_check(w, a, s, options.lmi.observability_guard);
  if (!out.observability.observable)
    throw GainSynthesisError("distributed observability precondition failed", Termination::precondition, {});

  const int d = w.size() * static_cast<int>(a.rows());
  if (d <= options.lmi.guard) {
    try {
      LmiDesign lmi = design_gain_lmi(w, a, s, options.lmi);
      out.gain = std::move(lmi.gain);
      out.rho = lmi.rho;
      out.lmi_termination = lmi.termination;
      out.lmi_history = std::move(lmi.history);
      out.method = lmi.termination == Termination::zero_gain ? SynthesisMethod::zero_gain : SynthesisMethod::lmi;
      return out;
    } catch (const GainSynthesisError& e) {
      out.lmi_termination = e.reason();
      out.lmi_message = e.what();
      out.lmi_history = e.history();
      if (!options.allow_fallback || e.reason() == Termination::precondition) throw;
    }
  } else {
    out.lmi_termination = Termination::guard_exceeded;
    out.lmi_message = "mn exceeds the LMI size guard";
    if (!options.allow_fallback) throw GainSynthesisError(out.lmi_message, Termination::guard_exceeded, {});
  }

  const ClosedLoop open = assemble_closed_loop(w, a, s, BlockDiagGain(w.size(), static_cast<int>(a.rows())),
                                               options.surrogate.closed_loop);
  if (open.radius_converged && verify_schur(open, options.surrogate.margin)) {
    out.gain = BlockDiagGain(w.size(), static_cast<int>(a.rows()));
    out.rho = open.spectral_radius;
    out.rho_dense = open.dense_radius;
    out.method = SynthesisMethod::zero_gain;
    return out;
  }
  const BlockDiagGain* warm = out.lmi_history.empty() ? nullptr : &out.lmi_history.back().k;
  SurrogateDesign fb = design_gain_surrogate(w, a, s, options.surrogate, warm);
  out.gain = std::move(fb.gain);
  out.rho = fb.rho;
  out.rho_dense = fb.rho_dense;
  out.surrogate_history = std::move(fb.history);
  out.method = SynthesisMethod::surrogate;
  return out;
}

Json observability_to_json(const observability::DistributedObservability& o) {
  Json j{{"observable", o.observable},
         {"dimension", o.dimension},
         {"dense_checked", o.dense_checked},
         {"guard_exceeded", o.guard_exceeded},
         {"structural_proxy", o.structural_proxy},
         {"network_strongly_connected", o.network_strongly_connected},
         {"system_full_rank", o.system_full_rank},
         {"parent_coverage", o.parent_coverage}};
  j["rank"] = o.rank ? Json(*o.rank) : Json(nullptr);
  return j;
}

Json synthesis_report_to_json(const GainSynthesis& g) {
  Json lmi_hist = Json::array();
  for (const auto& it : g.lmi_history)
    lmi_hist.push_back({{"t", it.t},
                        {"trace_value", it.trace_value},
                        {"rho", it.rho},
                        {"min_eig_stability", it.min_eig_stability},
                        {"min_eig_coupling", it.min_eig_coupling}});
  Json fb_hist = Json::array();
  for (const auto& c : g.surrogate_history) {
    Json entry{{"iteration", c.iteration}, {"objective", c.objective}, {"growth", c.growth}};
    entry["rho"] = c.rho >= 0.0 ? Json(c.rho) : Json(nullptr);
    fb_hist.push_back(std::move(entry));
  }
  Json lmi{{"history", std::move(lmi_hist)}, {"message", g.lmi_message}};
  lmi["termination"] = g.lmi_termination ? Json(to_string(*g.lmi_termination)) : Json(nullptr);
  return Json{{"method", to_string(g.method)},
              {"rho", g.rho},
              {"rho_dense", g.rho_dense},
              {"lmi", std::move(lmi)},
              {"fallback", Json{{"history", std::move(fb_hist)}}},
              {"observability", observability_to_json(g.observability)}};
}

}  // namespace resest::gain
