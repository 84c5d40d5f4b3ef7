#include "resest/app/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include <Eigen/Eigenvalues>

#include "resest/app/presets.hpp"
#include "resest/common/error.hpp"
#include "resest/common/rng.hpp"
#include "resest/gain/spectral.hpp"
#include "resest/graphs/graph_io.hpp"
#include "resest/graphs/scc.hpp"
#include "resest/sim/trace_io.hpp"

namespace resest::app {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool from_preset_files(const PipelineConfig& c) { return !c.pattern_file && !c.matrix_file; }

Json edges_json(const std::vector<graphs::Edge>& edges) {
  Json out = Json::array();
  for (const auto& [u, v] : edges) out.push_back(Json::array({u, v}));
  return out;
}

bool q_connected(const graphs::DiGraph& g, int q, graphs::ConnectivityMode mode) {
  if (g.node_count() <= 1) return true;
  if (q == 0) return graphs::is_strongly_connected(g);
  if (mode == graphs::ConnectivityMode::link) return graphs::is_q_link_connected(g, q).holds;
  if (q >= g.node_count() - 1) return false;
  return graphs::is_q_node_connected(g, q).holds;
}

}  // namespace

observability::SparsityPattern load_pattern(const PipelineConfig& c) {
  if (c.matrix_file) return observability::SparsityPattern::of(matrix_from_json(read_json_file(*c.matrix_file)));
  if (c.pattern_file) return observability::pattern_from_json(read_json_file(*c.pattern_file));
  return make_preset(c.preset, c.seed).pattern;
}

Matrix build_plant(const PipelineConfig& c, const observability::SparsityPattern& pattern) {
  if (c.matrix_file) {
    Matrix a = matrix_from_json(read_json_file(*c.matrix_file));
    if (a.rows() != a.cols()) throw InvalidInput("system matrix must be square");
    return a;
  }
  Rng rng(c.system_seed());
  return sim::random_plant(pattern, c.rho_target, rng);
}

observability::SensorSuite build_sensors(const PipelineConfig& c, const observability::SparsityPattern& pattern) {
  if (from_preset_files(c)) {
    const Preset p = make_preset(c.preset, c.seed);
    if (p.sensors && c.q == p.q) return *p.sensors;
  }
  return observability::place_sensors(pattern, c.q);
}

graphs::Augmentation build_network(const PipelineConfig& c, int sensor_count) {
  graphs::DiGraph g;
  if (c.network_file) {
    g = graphs::load_graph(*c.network_file);
    if (g.node_count() != sensor_count)
      throw DimensionMismatch("network has " + std::to_string(g.node_count()) + " nodes but there are " +
                              std::to_string(sensor_count) + " sensors");
  } else {
    g = make_preset(c.preset, c.seed).network;
    // A preset network sized for another placement is replaced by a ring.
    if (g.node_count() != sensor_count)
      g = sensor_count > 1 ? graphs::undirected_cycle(sensor_count) : graphs::DiGraph(sensor_count, false);
  }
  if (!c.augment || q_connected(g, c.q, c.connectivity)) return {g, {}};
  if (c.q >= sensor_count - 1 && c.connectivity == graphs::ConnectivityMode::node)
    throw InvalidInput("q = " + std::to_string(c.q) + " node connectivity needs more than " +
                       std::to_string(c.q + 1) + " sensors");
  return graphs::augment_to_q_connected(g, c.q, c.connectivity);
}

Instance build_instance(const PipelineConfig& c) {
  c.validate();
  Instance inst;
  inst.pattern = load_pattern(c);
  inst.a = build_plant(c, inst.pattern);
  inst.sensors = build_sensors(c, inst.pattern);
  if (inst.sensors.state_count() != inst.a.rows()) throw DimensionMismatch("sensor suite and plant differ in n");
  auto aug = build_network(c, inst.sensors.sensor_count());
  inst.network = std::move(aug.graph);
  inst.added_links = std::move(aug.added);
  inst.w = weights::make_weights(inst.network, c.scheme, c.weight_seed());
  inst.process_noise = c.process_noise;
  inst.measurement_noise = c.measurement_noise;
  return inst;
}

gain::SynthesisOptions synthesis_options(const PipelineConfig& c) {
  gain::SynthesisOptions o;
  o.lmi.epsilon = c.epsilon;
  o.lmi.max_iterations = c.max_iter;
  o.lmi.margin = c.margin;
  o.lmi.guard = c.lmi_guard;
  o.lmi.observability_guard = c.observability_guard;
  o.surrogate.margin = c.margin;
  o.surrogate.seed = derive_seed(c.seed, 4);
  o.allow_fallback = c.fallback;
  return o;
}

sim::SimulationOptions simulation_options(const PipelineConfig& c) {
  sim::SimulationOptions o;
  o.horizon = c.horizon;
  o.runs = c.runs;
  o.seed = c.simulation_seed();
  o.synthesis = synthesis_options(c);
  return o;
}

sim::LtiSystem make_system(const Instance& inst) {
  return sim::LtiSystem(inst.a, inst.process_noise, inst.measurement_noise);
}

Json pattern_report(const observability::SparsityPattern& pattern) {
  const auto scc = graphs::scc_decompose(observability::system_digraph(pattern));
  const auto eq = observability::equivalence_classes(pattern);
  return Json{{"n", pattern.rows()},
              {"nonzeros", pattern.nonzero_count()},
              {"full_diagonal", pattern.has_full_diagonal()},
              {"sccs", scc.components},
              {"parent_sccs", eq.classes},
              {"parent_scc_count", eq.classes.size()},
              {"non_parent_states", eq.non_parent_states}};
}

Json graph_report(const graphs::DiGraph& g) {
  const auto scc = graphs::scc_decompose(g);
  std::vector<std::vector<int>> parents;
  for (int id : scc.parent_components()) parents.push_back(scc.components[static_cast<std::size_t>(id)]);
  const auto rep = graphs::connectivity_report(g);
  Json j{{"nodes", g.node_count()},
         {"directed", g.directed()},
         {"arcs", g.edge_count()},
         {"strongly_connected", graphs::is_strongly_connected(g)},
         {"sccs", scc.components},
         {"parent_sccs", parents},
         {"node_connectivity", rep.node_connectivity},
         {"link_connectivity", rep.link_connectivity},
         {"min_degree", rep.min_degree},
         {"node_cut", rep.node_cut},
         {"link_cut", edges_json(rep.link_cut)}};
  j["algebraic_connectivity"] = rep.algebraic_connectivity ? Json(*rep.algebraic_connectivity) : Json(nullptr);
  // q-connected exactly for q < kappa (resp. e); the minimum cut certifies
  // that q = kappa fails.
  auto cert = [](int conn, const Json& cut) {
    Json c{{"witness_cut", cut}};
    c["max_q"] = conn > 0 ? Json(conn - 1) : Json(nullptr);
    return c;
  };
  j["certificates"] = {{"node", cert(rep.node_connectivity, j["node_cut"])},
                       {"link", cert(rep.link_connectivity, j["link_cut"])}};
  return j;
}

Json system_to_json(const Instance& inst) {
  return Json{{"n", inst.a.rows()},
              {"a", matrix_to_json(inst.a)},
              {"pattern", observability::pattern_to_json(inst.pattern)},
              {"process_noise", inst.process_noise},
              {"measurement_noise", inst.measurement_noise}};
}

Json weights_artifact(const weights::ConsensusMatrix& w, weights::WeightScheme scheme) {
  return Json{{"m", w.size()}, {"scheme", weights::to_string(scheme)}, {"matrix", weights::weights_to_json(w)}};
}

Design run_design(const PipelineConfig& c) {
  Design d{build_instance(c), {}, {}};
  d.synthesis = gain::synthesize_gain(d.instance.w, d.instance.a, d.instance.sensors, synthesis_options(c));
  d.closed_loop = gain::assemble_closed_loop(d.instance.w, d.instance.a, d.instance.sensors, d.synthesis.gain);
  return d;
}

Json design_summary(const PipelineConfig& c, const Design& d) {
  const auto& inst = d.instance;
  const auto eq = observability::equivalence_classes(inst.pattern);
  const auto rep = graphs::connectivity_report(inst.network);
  return Json{{"states", inst.a.rows()},
              {"sensors", inst.sensors.sensor_count()},
              {"q", c.q},
              {"parent_scc_count", eq.classes.size()},
              {"rho_a", gain::spectral_radius(inst.a)},
              {"structurally_observable", observability::check_structural_observability(inst.pattern, inst.sensors)},
              {"network",
               {{"node_connectivity", rep.node_connectivity},
                {"link_connectivity", rep.link_connectivity},
                {"q_connected", q_connected(inst.network, c.q, c.connectivity)},
                {"added_links", edges_json(inst.added_links)}}},
              {"weights_conforming", inst.w.satisfies_invariants(1e-12)},
              {"observability", gain::observability_to_json(d.synthesis.observability)},
              {"method", gain::to_string(d.synthesis.method)},
              {"rho", d.closed_loop.spectral_radius},
              {"rho_dense", d.closed_loop.dense_radius},
              {"schur", gain::verify_schur(d.closed_loop)}};
}

void write_design(const std::string& dir, const PipelineConfig& c, const Design& d) {
  fs::create_directories(dir);
  const auto& inst = d.instance;
  auto put = [&](const char* name, const Json& j) { write_text_file((fs::path(dir) / name).string(), dump_json(j)); };
  put("system.json", system_to_json(inst));
  put("sensors.json", observability::sensors_to_json(inst.sensors));
  put("network.json", graphs::graph_to_json(inst.network));
  put("weights.json", weights_artifact(inst.w, c.scheme));
  put("gain.json", gain::gain_to_json(d.synthesis.gain));
  put("synthesis.json", gain::synthesis_report_to_json(d.synthesis));
  put("design.json", design_summary(c, d));
  put("config.json", config_to_json(c));
}

bool has_artifacts(const std::string& dir) {
  for (const char* f : {"system.json", "sensors.json", "network.json", "weights.json", "gain.json"})
    if (!fs::exists(fs::path(dir) / f)) return false;
  return true;
}

Artifacts load_artifacts(const std::string& dir) {
  auto get = [&](const char* name) {
    const auto path = fs::path(dir) / name;
    if (!fs::exists(path)) throw InvalidInput("missing artifact " + path.string() + " (run design first)");
    return read_json_file(path.string());
  };
  const Json sys = get("system.json");
  Instance inst;
  inst.a = matrix_from_json(sys.at("a"));
  inst.pattern = sys.contains("pattern") ? observability::pattern_from_json(sys["pattern"])
                                         : observability::SparsityPattern::of(inst.a);
  inst.process_noise = sys.value("process_noise", 0.1);
  inst.measurement_noise = sys.value("measurement_noise", 0.1);
  inst.sensors = observability::sensors_from_json(get("sensors.json"));
  inst.network = graphs::graph_from_json(get("network.json"));
  const Matrix w = matrix_from_json(get("weights.json").at("matrix"));
  auto k = gain::gain_from_json(get("gain.json"));

  const int n = static_cast<int>(inst.a.rows());
  const int m = inst.sensors.sensor_count();
  if (inst.a.rows() != inst.a.cols()) throw DimensionMismatch("system matrix is not square");
  if (inst.pattern.rows() != n) throw DimensionMismatch("pattern and system matrix differ in n");
  if (inst.sensors.state_count() != n) throw DimensionMismatch("sensors.json has n = " +
                                                              std::to_string(inst.sensors.state_count()) +
                                                              ", system.json has n = " + std::to_string(n));
  if (inst.network.node_count() != m) throw DimensionMismatch("network.json has " +
                                                             std::to_string(inst.network.node_count()) +
                                                             " nodes for " + std::to_string(m) + " sensors");
  if (w.rows() != m || w.cols() != m) throw DimensionMismatch("weights.json is not " + std::to_string(m) + " x " +
                                                              std::to_string(m));
  if (k.sensor_count() != m || k.state_count() != n)
    throw DimensionMismatch("gain.json is for m = " + std::to_string(k.sensor_count()) + ", n = " +
                            std::to_string(k.state_count()) + ", artifacts have m = " + std::to_string(m) +
                            ", n = " + std::to_string(n));
  inst.w = weights::ConsensusMatrix(w, inst.network);
  if (!inst.w.satisfies_invariants(1e-9))
    throw DimensionMismatch("weights.json is not stochastic or not supported on network.json");
  return {std::move(inst), std::move(k)};
}

sim::SimTrace run_simulation(const PipelineConfig& c, const Artifacts& art) {
  c.scenario.validate(c.horizon, art.instance.sensors.sensor_count());
  const auto sys = make_system(art.instance);
  return sim::run_simulation(sys, sim::initial_config(art.instance.w, art.instance.sensors, art.gain), c.scenario,
                             simulation_options(c));
}

void write_simulation(const std::string& dir, const PipelineConfig& c, const sim::SimTrace& trace) {
  fs::create_directories(dir);
  write_text_file((fs::path(dir) / "simulation.csv").string(), sim::mse_csv(trace));
  Json j = sim::trace_to_json(trace);
  j["config"] = config_to_json(c);
  write_text_file((fs::path(dir) / "simulation.json").string(), dump_json(j));
}

bool VerifyResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double mse_peak(const sim::SimTrace& trace, int from, int to) {
  double peak = 0.0;
  for (int k = std::max(from, 1); k <= std::min(to, trace.horizon); ++k)
    for (int i = 0; i < trace.sensor_count; ++i) {
      if (!trace.active(k, i)) continue;
      const double v = trace.mse(k - 1, i);
      if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
      peak = std::max(peak, v);
    }
  return peak;
}

VerifyResult verify_preset(const std::string& preset, std::uint64_t seed, const std::string& dir) {
  const PipelineConfig c = preset_config(preset, seed);
  VerifyResult r;
  auto add = [&](std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const Instance inst = build_instance(c);
  const auto eq = observability::equivalence_classes(inst.pattern);
  const int expected = static_cast<int>(eq.classes.size()) * (c.q + 1);
  if (!make_preset(preset, seed).sensors)
    add("sensor placement", inst.sensors.sensor_count() == expected,
        std::to_string(inst.sensors.sensor_count()) + " sensors for " + std::to_string(eq.classes.size()) +
            " parent SCCs");
  add("structural observability", observability::check_structural_observability(inst.pattern, inst.sensors),
      "every state reaches a measured state");
  add("network q-connectivity", q_connected(inst.network, c.q, c.connectivity),
      "kappa = " + std::to_string(graphs::node_connectivity(inst.network).connectivity) + ", q = " +
          std::to_string(c.q));
  add("weights stochastic", inst.w.satisfies_invariants(1e-12), "row-sum error " + fmt(inst.w.row_sum_error()));

  Design d;
  try {
    d = run_design(c);
  } catch (const gain::GainSynthesisError& e) {
    add("gain synthesis", false, e.what());
    return r;
  }
  write_design(dir, c, d);
  const auto& obs = d.synthesis.observability;
  add("distributed observability", obs.observable,
      obs.dense_checked ? "rank " + std::to_string(*obs.rank) + " of " + std::to_string(obs.dimension)
                        : "structural proxy, dense check skipped at mn = " + std::to_string(obs.dimension));
  add("closed loop Schur", gain::verify_schur(d.closed_loop) && d.closed_loop.radius_converged,
      "rho = " + fmt(d.closed_loop.spectral_radius) + (d.closed_loop.dense_radius ? " (dense)" : " (subspace)") +
          " via " + gain::to_string(d.synthesis.method));

  const Artifacts art = load_artifacts(dir);
  const auto trace = run_simulation(c, art);
  write_simulation(dir, c, trace);

  const bool rounds_ok =
      std::all_of(trace.rounds.begin(), trace.rounds.end(), [&](long long n) { return n == trace.horizon; });
  add("single time-scale rounds", rounds_ok, "rounds = horizon = " + std::to_string(trace.horizon));

  // Steady band before the first event (or the first half), compared to the
  // peak after it.
  const int split = c.scenario.events.empty() ? trace.horizon / 2 : c.scenario.events.front().time - 1;
  const double band = mse_peak(trace, trace.horizon / 4, split);
  const double late = mse_peak(trace, split + 1, trace.horizon);
  add("bounded MSE", std::isfinite(late) && late <= 10.0 * band,
      "peak " + fmt(late) + " after k = " + std::to_string(split) + ", band " + fmt(band));

  for (const auto& f : trace.failures) {
    const auto& net = f.config.w.network();
    add("post-failure strong connectivity", f.strongly_connected,
        std::to_string(net.node_count()) + " sensors, kappa = " +
            std::to_string(graphs::node_connectivity(net).connectivity));
    add("post-failure structural observability", f.structurally_observable,
        std::to_string(f.config.s.sensor_count()) + " sensors cover every parent SCC");
    add("post-failure closed loop Schur", f.rho < 1.0 && !f.redesign_failed,
        "rho = " + fmt(f.rho) + (f.redesigned ? " after redesign" : " with kept gain"));
  }
  return r;
}

std::string format_checks(const std::string& preset, const VerifyResult& r) {
  std::string out = "verify " + preset + "\n";
  std::size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.checks) {
    out += c.passed ? "PASS  " : "FAIL  ";
    out += c.name + std::string(width - c.name.size() + 2, ' ') + c.detail + "\n";
  }
  out += r.passed() ? "all checks passed\n" : "some checks failed\n";
  return out;
}

}  // namespace resest::app
