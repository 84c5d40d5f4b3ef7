#include "resest/sim/trace_io.hpp"

#include <cstdio>

namespace resest::sim {

std::string mse_csv(const SimTrace& trace) {
  std::string out = "k,sensor_id,mse\n";
  char buf[64];
  for (int k = 1; k <= trace.horizon; ++k)
    for (int i = 0; i < trace.sensor_count; ++i) {
      if (!trace.active(k, i)) continue;
      std::snprintf(buf, sizeof buf, "%d,%d,%.12g\n", k, i, trace.mse(k - 1, i));
      out += buf;
    }
  return out;
}

Json trace_metadata(const SimTrace& trace) {
  Json failures = Json::array();
  for (const auto& f : trace.failures)
    failures.push_back({{"strongly_connected", f.strongly_connected},
                        {"structurally_observable", f.structurally_observable},
                        {"redesigned", f.redesigned},
                        {"redesign_failed", f.redesign_failed},
                        {"rho", f.rho},
                        {"rho_dense", f.rho_dense},
                        {"sensors", f.config.sensor_ids},
                        {"note", f.note}});
  Json j{{"seed", trace.seed},
         {"scenario", trace.scenario},
         {"rho_pre", trace.rho_pre},
         {"policy", trace.policy},
         {"horizon", trace.horizon},
         {"runs", trace.runs},
         {"states", trace.state_count},
         {"sensors", trace.sensor_count},
         {"mse_normalization", "per-state (||e_i||^2 / n)"},
         {"communication_rounds", trace.rounds},
         {"failures", std::move(failures)}};
  j["rho_post"] = trace.rho_post ? Json(*trace.rho_post) : Json(nullptr);
  return j;
}

Json trace_to_json(const SimTrace& trace) {
  Json j = trace_metadata(trace);
  Json series = Json::array();
  for (int i = 0; i < trace.sensor_count; ++i) {
    Json values = Json::array();
    for (int k = 1; k <= trace.horizon && trace.active(k, i); ++k) values.push_back(trace.mse(k - 1, i));
    series.push_back({{"sensor_id", i}, {"mse", std::move(values)}});
  }
  j["mse"] = std::move(series);
  if (!trace.true_state.empty()) {
    Json steps = Json::array();
    for (std::size_t k = 0; k < trace.true_state.size(); ++k) {
      Json est = Json::array();
      for (const auto& v : trace.posterior[k])
        est.push_back(v.size() == 0 ? Json(nullptr) : Json(std::vector<double>(v.data(), v.data() + v.size())));
      const Vector& x = trace.true_state[k];
      steps.push_back({{"k", static_cast<int>(k)},
                       {"x", std::vector<double>(x.data(), x.data() + x.size())},
                       {"estimates", std::move(est)}});
    }
    j["run0"] = std::move(steps);
  }
  return j;
}

}  // namespace resest::sim
