#include "resest/sim/failure.hpp"

#include <algorithm>

#include "resest/common/error.hpp"
#include "resest/graphs/scc.hpp"
#include "resest/observability/structural.hpp"

namespace resest::sim {

std::string to_string(GainPolicy p) { return p == GainPolicy::keep_gain ? "keep-gain" : "redesign-gain"; }

GainPolicy parse_gain_policy(const std::string& name) {
  if (name == "keep-gain") return GainPolicy::keep_gain;
  if (name == "redesign-gain") return GainPolicy::redesign_gain;
  throw InvalidInput("unknown post-failure policy \"" + name + "\" (keep-gain | redesign-gain)");
}

void FailureScenario::validate(int horizon, int sensor_count) const {
  int last = 0;
  int alive = sensor_count;
  for (const auto& e : events) {
    if (e.time < 1 || e.time > horizon) throw InvalidInput("failure time outside [1, horizon]");
    if (e.time < last) throw InvalidInput("failure events must be sorted by time");
    last = e.time;
    if (e.kind == FailureKind::remove_nodes) {
      for (int v : e.nodes)
        if (v < 0 || v >= sensor_count) throw InvalidInput("removed sensor id out of range");
      alive -= static_cast<int>(e.nodes.size());
      if (alive < 1) throw InvalidInput("node removals must leave at least one sensor");
    } else {
      for (const auto& [u, v] : e.links)
        if (u < 0 || v < 0 || u >= sensor_count || v >= sensor_count) throw InvalidInput("link endpoint out of range");
    }
  }
}

EstimatorConfig initial_config(weights::ConsensusMatrix w, observability::SensorSuite s, gain::BlockDiagGain k) {
  std::vector<int> ids(static_cast<std::size_t>(w.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return EstimatorConfig{std::move(w), std::move(s), std::move(k), std::move(ids)};
}

namespace {

int position_of(const std::vector<int>& ids, int original) {
  const auto it = std::find(ids.begin(), ids.end(), original);
  if (it == ids.end()) throw InvalidInput("sensor " + std::to_string(original) + " was already removed");
  return static_cast<int>(it - ids.begin());
}

}  // namespace

FailureOutcome apply_failure(const Matrix& a, const EstimatorConfig& config, const FailureEvent& event,
                             GainPolicy policy, weights::RepairPolicy repair,
                             const gain::SynthesisOptions& synthesis) {
  FailureOutcome out{config, false, false, false, false, {}, 0.0, true};
  EstimatorConfig& c = out.config;
  if (event.kind == FailureKind::remove_links) {
    std::vector<graphs::Edge> local;
    for (const auto& [u, v] : event.links) local.emplace_back(position_of(c.sensor_ids, u), position_of(c.sensor_ids, v));
    c.w = weights::remove_links(c.w, local, repair);
  } else {
    std::vector<int> local;
    for (int v : event.nodes) local.push_back(position_of(c.sensor_ids, v));
    c.w = weights::remove_nodes(c.w, local, repair);
    c.s = c.s.without_sensors(local);
    c.k = c.k.without_blocks(local);
    std::vector<int> ids;
    for (std::size_t i = 0; i < c.sensor_ids.size(); ++i)
      if (std::find(local.begin(), local.end(), static_cast<int>(i)) == local.end()) ids.push_back(c.sensor_ids[i]);
    c.sensor_ids = std::move(ids);
  }

  out.strongly_connected = graphs::is_strongly_connected(c.w.network());
  out.structurally_observable =
      observability::check_structural_observability(observability::SparsityPattern::of(a), c.s);
  if (!out.strongly_connected) out.note = "network is no longer strongly connected";

  if (policy == GainPolicy::redesign_gain) {
    try {
      gain::GainSynthesis g = gain::synthesize_gain(c.w, a, c.s, synthesis);
      c.k = std::move(g.gain);
      out.redesigned = true;
    } catch (const SynthesisFailure& e) {
      out.redesign_failed = true;
      if (!out.note.empty()) out.note += "; ";
      out.note += std::string("redesign failed: ") + e.what();
    }
  }
  const gain::ClosedLoop cl = gain::assemble_closed_loop(c.w, a, c.s, c.k, synthesis.surrogate.closed_loop);
  out.rho = cl.spectral_radius;
  out.rho_dense = cl.dense_radius;
  return out;
}

Json scenario_to_json(const FailureScenario& s) {
  Json events = Json::array();
  for (const auto& e : s.events) {
    Json j{{"time", e.time}, {"kind", e.kind == FailureKind::remove_links ? "remove-links" : "remove-nodes"}};
    if (e.kind == FailureKind::remove_links) {
      Json links = Json::array();
      for (const auto& [u, v] : e.links) links.push_back(Json::array({u, v}));
      j["links"] = std::move(links);
    } else {
      j["nodes"] = e.nodes;
    }
    events.push_back(std::move(j));
  }
  return Json{{"name", s.name},
              {"events", std::move(events)},
              {"policy", to_string(s.policy)},
              {"repair", s.repair == weights::RepairPolicy::absorb_into_diagonal ? "absorb" : "uniform"}};
}

FailureScenario scenario_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("failure scenario must be a JSON object");
  FailureScenario s;
  s.name = doc.value("name", std::string("custom"));
  s.policy = parse_gain_policy(doc.value("policy", std::string("redesign-gain")));
  const std::string repair = doc.value("repair", std::string("absorb"));
  if (repair == "absorb")
    s.repair = weights::RepairPolicy::absorb_into_diagonal;
  else if (repair == "uniform")
    s.repair = weights::RepairPolicy::uniform_renormalize;
  else
    throw InvalidInput("unknown repair policy \"" + repair + "\" (absorb | uniform)");
  if (doc.contains("events")) {
    if (!doc["events"].is_array()) throw InvalidInput("\"events\" must be an array");
    for (const auto& ej : doc["events"]) {
      FailureEvent e;
      e.time = ej.at("time").get<int>();
      const std::string kind = ej.at("kind").get<std::string>();
      if (kind == "remove-links") {
        e.kind = FailureKind::remove_links;
        for (const auto& l : ej.at("links")) {
          if (!l.is_array() || l.size() != 2) throw InvalidInput("a link is a pair [u, v]");
          e.links.emplace_back(l[0].get<int>(), l[1].get<int>());
        }
      } else if (kind == "remove-nodes") {
        e.kind = FailureKind::remove_nodes;
        e.nodes = ej.at("nodes").get<std::vector<int>>();
      } else {
        throw InvalidInput("unknown failure kind \"" + kind + "\"");
      }
      s.events.push_back(std::move(e));
    }
  }
  return s;
}

}  // namespace resest::sim
