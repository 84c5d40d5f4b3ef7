#pragma once

#include <string>

#include "resest/common/json_io.hpp"
#include "resest/sim/simulation.hpp"

namespace resest::sim {

/// `k,sensor_id,mse` rows for k = 1..horizon and every active sensor, %.12g.
std::string mse_csv(const SimTrace& trace);

/// {seed, scenario, rho_pre, rho_post, policy, horizon, runs} plus the
/// MSE normalization, round counts and per-failure flags.
Json trace_metadata(const SimTrace& trace);

/// Metadata, MSE series and the recorded run's states and estimates.
Json trace_to_json(const SimTrace& trace);

}  // namespace resest::sim
