#include "resest/app/config.hpp"

#include "resest/app/presets.hpp"
#include "resest/common/error.hpp"
#include "resest/common/rng.hpp"

namespace resest::app {

std::uint64_t PipelineConfig::system_seed() const { return derive_seed(seed, 1); }
std::uint64_t PipelineConfig::weight_seed() const { return derive_seed(seed, 2); }
std::uint64_t PipelineConfig::simulation_seed() const { return derive_seed(seed, 3); }

void PipelineConfig::validate() const {
  if (q < 0) throw InvalidInput("q must be nonnegative");
  if (horizon < 1) throw InvalidInput("horizon must be at least 1");
  if (runs < 1) throw InvalidInput("runs must be at least 1");
  if (!(rho_target > 0.0)) throw InvalidInput("rho_target must be positive");
  if (process_noise < 0.0 || measurement_noise < 0.0) throw InvalidInput("noise levels must be nonnegative");
  if (max_iter < 1) throw InvalidInput("max_iter must be at least 1");
  if (margin < 0.0 || margin >= 1.0) throw InvalidInput("margin must lie in [0, 1)");
}

std::string to_string(graphs::ConnectivityMode mode) {
  return mode == graphs::ConnectivityMode::node ? "node" : "link";
}

graphs::ConnectivityMode parse_connectivity_mode(const std::string& name) {
  if (name == "node") return graphs::ConnectivityMode::node;
  if (name == "link") return graphs::ConnectivityMode::link;
  throw InvalidInput("unknown connectivity mode \"" + name + "\" (node | link)");
}

PipelineConfig preset_config(const std::string& preset, std::uint64_t seed) {
  const Preset p = make_preset(preset, seed);
  PipelineConfig c;
  c.preset = preset;
  c.seed = seed;
  c.rho_target = p.rho_target;
  c.q = p.q;
  c.scheme = p.scheme;
  c.horizon = p.horizon;
  c.runs = p.runs;
  c.scenario = p.scenario;
  return c;
}

namespace {

template <typename T>
void read(const Json& obj, const char* key, T& field) {
  if (obj.contains(key) && !obj[key].is_null()) field = obj[key].get<T>();
}

void read_path(const Json& obj, const char* key, std::optional<std::string>& field) {
  if (obj.contains(key)) field = obj[key].is_null() ? std::nullopt : std::optional(obj[key].get<std::string>());
}

const Json& section(const Json& doc, const char* key) {
  static const Json empty = Json::object();
  if (!doc.contains(key)) return empty;
  if (!doc[key].is_object()) throw InvalidInput(std::string("config section \"") + key + "\" must be an object");
  return doc[key];
}

}  // namespace

PipelineConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("config must be a JSON object");
  try {
    const std::string preset = doc.value("preset", std::string("fig3-nominal"));
    const std::uint64_t seed = doc.value("seed", std::uint64_t{1});
    PipelineConfig c = preset_config(preset, seed);

    const Json& sys = section(doc, "system");
    read_path(sys, "pattern_file", c.pattern_file);
    read_path(sys, "matrix_file", c.matrix_file);
    read(sys, "rho_target", c.rho_target);
    read(sys, "process_noise", c.process_noise);
    read(sys, "measurement_noise", c.measurement_noise);

    read(doc, "q", c.q);

    const Json& net = section(doc, "network");
    read_path(net, "file", c.network_file);
    read(net, "augment", c.augment);
    if (net.contains("mode")) c.connectivity = parse_connectivity_mode(net["mode"].get<std::string>());

    const Json& w = section(doc, "weights");
    if (w.contains("scheme")) c.scheme = weights::parse_weight_scheme(w["scheme"].get<std::string>());

    const Json& g = section(doc, "gain");
    if (g.contains("epsilon") && g["epsilon"].is_string()) {
      if (g["epsilon"] != "1e-3*mn") throw InvalidInput("gain.epsilon must be a number or \"1e-3*mn\"");
      c.epsilon = -1.0;
    } else {
      read(g, "epsilon", c.epsilon);
    }
    read(g, "max_iter", c.max_iter);
    read(g, "guard", c.lmi_guard);
    read(g, "observability_guard", c.observability_guard);
    read(g, "margin", c.margin);
    read(g, "fallback", c.fallback);

    const Json& s = section(doc, "simulation");
    read(s, "horizon", c.horizon);
    read(s, "runs", c.runs);
    if (doc.contains("failure")) c.scenario = sim::scenario_from_json(doc["failure"]);

    read(doc, "output", c.output);
    c.validate();
    return c;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
}

Json config_to_json(const PipelineConfig& c) {
  auto path = [](const std::optional<std::string>& p) { return p ? Json(*p) : Json(nullptr); };
  Json gain{{"max_iter", c.max_iter},
            {"guard", c.lmi_guard},
            {"observability_guard", c.observability_guard},
            {"margin", c.margin},
            {"fallback", c.fallback}};
  gain["epsilon"] = c.epsilon < 0.0 ? Json("1e-3*mn") : Json(c.epsilon);
  return Json{{"preset", c.preset},
              {"seed", c.seed},
              {"system",
               {{"pattern_file", path(c.pattern_file)},
                {"matrix_file", path(c.matrix_file)},
                {"rho_target", c.rho_target},
                {"process_noise", c.process_noise},
                {"measurement_noise", c.measurement_noise}}},
              {"q", c.q},
              {"network", {{"file", path(c.network_file)}, {"augment", c.augment}, {"mode", to_string(c.connectivity)}}},
              {"weights", {{"scheme", weights::to_string(c.scheme)}}},
              {"gain", std::move(gain)},
              {"simulation", {{"horizon", c.horizon}, {"runs", c.runs}}},
              {"failure", sim::scenario_to_json(c.scenario)},
              {"output", c.output}};
}

}  // namespace resest::app
