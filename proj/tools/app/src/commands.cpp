#include "resest/app/commands.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "resest/app/pipeline.hpp"
#include "resest/app/presets.hpp"
#include "resest/common/error.hpp"
#include "resest/graphs/graph_io.hpp"

namespace resest::app {

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> preset;
};

PipelineConfig resolve_config(const CommonFlags& f) {
  Json doc = f.config_file.empty() ? Json::object() : read_json_file(f.config_file);
  if (!doc.is_object()) throw InvalidInput("config must be a JSON object");
  if (f.preset) doc["preset"] = *f.preset;
  if (f.seed) doc["seed"] = *f.seed;
  PipelineConfig c = config_from_json(doc);
  if (f.out) c.output = *f.out;
  return c;
}

void put(const std::string& dir, const char* name, const Json& j) {
  fs::create_directories(dir);
  write_text_file((fs::path(dir) / name).string(), dump_json(j));
}

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_file, "pipeline config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--preset", f.preset, "built-in preset");
}

int cmd_analyze(const CommonFlags& f, const std::string& file, std::ostream& out) {
  Json report;
  if (!file.empty()) {
    const Json doc = read_json_file(file);
    if (doc.is_object() && doc.contains("nonzeros"))
      report = {{"pattern", pattern_report(observability::pattern_from_json(doc))}};
    else
      report = {{"graph", graph_report(graphs::graph_from_json(doc))}};
  } else {
    const PipelineConfig c = resolve_config(f);
    const Preset p = make_preset(c.preset, c.seed);
    report = {{"preset", c.preset},
              {"system", pattern_report(load_pattern(c))},
              {"network", graph_report(c.network_file ? graphs::load_graph(*c.network_file) : p.network)}};
  }
  if (f.out) put(*f.out, "analysis.json", report);
  out << dump_json(report) << "\n";
  return exit_ok;
}

int cmd_place(const CommonFlags& f, std::ostream& out) {
  const PipelineConfig c = resolve_config(f);
  const auto pattern = load_pattern(c);
  const auto s = build_sensors(c, pattern);
  put(c.output, "sensors.json", observability::sensors_to_json(s));
  out << s.sensor_count() << " sensors over " << observability::equivalence_classes(pattern).classes.size()
      << " parent SCCs (q = " << c.q << "), structurally observable: "
      << (observability::check_structural_observability(pattern, s) ? "yes" : "no") << "\n";
  return exit_ok;
}

int cmd_augment(const CommonFlags& f, std::ostream& out) {
  const PipelineConfig c = resolve_config(f);
  const auto s = build_sensors(c, load_pattern(c));
  const auto aug = build_network(c, s.sensor_count());
  put(c.output, "network.json", graphs::graph_to_json(aug.graph));
  out << "network on " << aug.graph.node_count() << " sensors, " << aug.added.size() << " arcs added, kappa = "
      << graphs::node_connectivity(aug.graph).connectivity << "\n";
  return exit_ok;
}

int cmd_weights(const CommonFlags& f, std::ostream& out) {
  const PipelineConfig c = resolve_config(f);
  const Instance inst = build_instance(c);
  put(c.output, "network.json", graphs::graph_to_json(inst.network));
  put(c.output, "weights.json", weights_artifact(inst.w, c.scheme));
  out << weights::to_string(c.scheme) << " weights on " << inst.w.size()
      << " sensors, row-sum error " << inst.w.row_sum_error() << "\n";
  return exit_ok;
}

void dump_failure(const std::string& dir, const gain::GainSynthesisError& e, std::ostream& err) {
  Json hist = Json::array();
  for (const auto& it : e.history())
    hist.push_back({{"t", it.t}, {"trace_value", it.trace_value}, {"rho", it.rho}});
  put(dir, "synthesis.json",
      Json{{"error", e.what()}, {"termination", gain::to_string(e.reason())}, {"history", hist}});
  err << "synthesis failed: " << e.what() << "\n";
  for (const auto& it : e.history())
    err << "  t = " << it.t << "  trace = " << it.trace_value << "  rho = " << it.rho << "\n";
}

int cmd_gain(const CommonFlags& f, bool composite, std::ostream& out, std::ostream& err) {
  const PipelineConfig c = resolve_config(f);
  Design d;
  try {
    d = run_design(c);
  } catch (const gain::GainSynthesisError& e) {
    dump_failure(c.output, e, err);
    return exit_synthesis_failure;
  }
  if (composite) {
    write_design(c.output, c, d);
  } else {
    put(c.output, "gain.json", gain::gain_to_json(d.synthesis.gain));
    put(c.output, "synthesis.json", gain::synthesis_report_to_json(d.synthesis));
  }
  const bool ok = gain::verify_schur(d.closed_loop);
  out << "method " << gain::to_string(d.synthesis.method) << ", rho(A-hat) = " << d.closed_loop.spectral_radius
      << (d.closed_loop.dense_radius ? " (dense)" : " (subspace)") << ", m = " << d.instance.sensors.sensor_count()
      << ", n = " << d.instance.a.rows() << "\n";
  return ok ? exit_ok : exit_synthesis_failure;
}

int cmd_simulate(const CommonFlags& f, const std::string& artifacts, std::ostream& out, std::ostream& err) {
  const PipelineConfig c = resolve_config(f);
  const std::string dir = artifacts.empty() ? c.output : artifacts;
  if (!has_artifacts(dir)) {
    try {
      write_design(dir, c, run_design(c));
    } catch (const gain::GainSynthesisError& e) {
      dump_failure(dir, e, err);
      return exit_synthesis_failure;
    }
  }
  const Artifacts art = load_artifacts(dir);
  const auto trace = run_simulation(c, art);
  write_simulation(c.output, c, trace);
  out << "simulated " << trace.runs << " runs x " << trace.horizon << " steps, peak MSE "
      << mse_peak(trace, 1, trace.horizon) << "\n";
  return exit_ok;
}

int cmd_verify(const CommonFlags& f, const std::string& positional, std::ostream& out) {
  const std::string preset = !positional.empty() ? positional : f.preset.value_or("fig3-nominal");
  make_preset(preset);  // unknown names fail before any work
  const std::string dir = f.out.value_or((fs::path("out") / ("verify-" + preset)).string());
  const auto r = verify_preset(preset, f.seed.value_or(1), dir);
  out << format_checks(preset, r);
  return r.passed() ? exit_ok : exit_check_failed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resilient single time-scale distributed estimation"};
  app.require_subcommand(1);
  std::string presets;
  for (const auto& n : preset_names()) presets += (presets.empty() ? "" : ", ") + n;
  app.footer("Presets: " + presets);

  CommonFlags flags;
  std::string file;
  std::string artifacts;
  std::string preset_arg;

  auto* analyze = app.add_subcommand("analyze", "SCCs, parent SCCs and connectivity of a graph, pattern or preset");
  analyze->add_option("file", file, "graph or sparsity-pattern JSON")->check(CLI::ExistingFile);
  auto* place = app.add_subcommand("place", "place q + 1 sensors per parent SCC");
  auto* augment = app.add_subcommand("augment", "augment the network to q-connectivity");
  auto* weights_cmd = app.add_subcommand("weights", "build the consensus weight matrix");
  auto* gain_cmd = app.add_subcommand("gain", "synthesize the block-diagonal gain");
  auto* design = app.add_subcommand("design", "place, augment, weigh and synthesize; write all artifacts");
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo simulation of the designed estimator");
  simulate->add_option("--artifacts", artifacts, "directory holding design artifacts (default: --out)");
  auto* verify = app.add_subcommand("verify", "run the checks of one preset");
  verify->add_option("name", preset_arg, "preset name");
  for (auto* cmd : {analyze, place, augment, weights_cmd, gain_cmd, design, simulate, verify}) add_common(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }

  try {
    if (*analyze) return cmd_analyze(flags, file, out);
    if (*place) return cmd_place(flags, out);
    if (*augment) return cmd_augment(flags, out);
    if (*weights_cmd) return cmd_weights(flags, out);
    if (*gain_cmd) return cmd_gain(flags, false, out, err);
    if (*design) return cmd_gain(flags, true, out, err);
    if (*simulate) return cmd_simulate(flags, artifacts, out, err);
    if (*verify) return cmd_verify(flags, preset_arg, out);
  } catch (const DimensionMismatch& e) {
    err << "inconsistent artifacts: " << e.what() << "\n";
    return exit_inconsistent_artifacts;
  } catch (const SynthesisFailure& e) {
    err << "synthesis failed: " << e.what() << "\n";
    return exit_synthesis_failure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const Json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return exit_input_error;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  }
  return exit_input_error;
}

}  // namespace resest::app
