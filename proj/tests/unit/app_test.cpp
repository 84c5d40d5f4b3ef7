#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "resest/app/commands.hpp"
#include "resest/app/config.hpp"
#include "resest/app/pipeline.hpp"
#include "resest/app/presets.hpp"
#include "resest/common/error.hpp"
#include "resest/gain/block_gain.hpp"
#include "resest/graphs/connectivity.hpp"
#include "resest/graphs/scc.hpp"
#include "resest/observability/structural.hpp"

using namespace resest;
using namespace resest::app;
namespace fs = std::filesystem;

namespace {

struct Cli {
  int code = 0;
  std::string out;
  std::string err;
};

Cli run(std::vector<std::string> args) {
  args.insert(args.begin(), "resest");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("resest_app_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Presets, Shapes) {
  const auto f3 = make_preset("fig3-nominal");
  EXPECT_EQ(observability::equivalence_classes(f3.pattern).classes.size(), 3u);
  EXPECT_EQ(graphs::node_connectivity(f3.network).connectivity, 3);
  EXPECT_EQ(graphs::link_connectivity(f3.network).connectivity, 3);
  const auto f2 = make_preset("fig2");
  EXPECT_EQ(graphs::node_connectivity(f2.network).connectivity, 3);
  EXPECT_EQ(graphs::link_connectivity(f2.network).connectivity, 3);
  const auto f7 = make_preset("fig7-large");
  EXPECT_EQ(f7.pattern.rows(), 70);
  EXPECT_EQ(observability::equivalence_classes(f7.pattern).classes.size(), 30u);
  EXPECT_EQ(f7.network.node_count(), 60);
  EXPECT_TRUE(graphs::is_strongly_connected(f7.network));
  EXPECT_THROW(make_preset("fig9"), InvalidInput);
  const auto links = make_preset("fig6-linkfail");
  EXPECT_TRUE(graphs::is_strongly_connected(links.network.without_edges(fig3_failed_links())));
}

TEST(Config, DefaultsRoundTrip) {
  const PipelineConfig c = preset_config("fig6-nodefail", 3);
  const Json j = config_to_json(c);
  const PipelineConfig back = config_from_json(j);
  EXPECT_EQ(dump_json(config_to_json(back)), dump_json(j));
  EXPECT_EQ(back.scenario.events.size(), 1u);
  EXPECT_EQ(j["weights"]["scheme"], "random");
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(config_from_json(Json{{"q", -1}}), InvalidInput);
  EXPECT_THROW(config_from_json(Json{{"simulation", {{"horizon", 0}}}}), InvalidInput);
  EXPECT_THROW(config_from_json(Json{{"weights", {{"scheme", "bogus"}}}}), InvalidInput);
  EXPECT_THROW(config_from_json(Json{{"q", "one"}}), InvalidInput);
  EXPECT_THROW(config_from_json(Json::array()), InvalidInput);
}

TEST(Pipeline, MinimalPlacementUsesOneSensorPerClass) {
  PipelineConfig c = preset_config("fig3-nominal");
  c.q = 0;
  const Instance inst = build_instance(c);
  EXPECT_EQ(inst.sensors.sensor_count(), 3);
  EXPECT_EQ(inst.network.node_count(), 3);
  EXPECT_TRUE(graphs::is_strongly_connected(inst.network));
}

TEST(Cli, AnalyzeReports) {
  const auto dir = scratch("analyze");
  const auto file = dir / "edgeless.json";
  std::ofstream(file) << R"({"nodes": 4, "directed": false, "edges": []})";
  auto r = run({"analyze", file.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parse_json(r.out);
  EXPECT_EQ(j["graph"]["node_connectivity"], 0);
  EXPECT_EQ(j["graph"]["link_connectivity"], 0);

  r = run({"analyze", "--preset", "fig3-nominal"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_json(r.out)["system"]["parent_scc_count"], 3);
  r = run({"analyze", "--preset", "fig2"});
  EXPECT_EQ(parse_json(r.out)["network"]["node_connectivity"], 3);
  EXPECT_EQ(parse_json(r.out)["network"]["link_connectivity"], 3);
}

TEST(Cli, InputErrorsExitTwo) {
  const auto dir = scratch("errors");
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_EQ(run({"analyze", (dir / "bad.json").string()}).code, 2);
  EXPECT_EQ(run({"verify", "fig99"}).code, 2);
  EXPECT_EQ(run({"design", "--config", (dir / "bad.json").string()}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  std::ofstream(dir / "neg.json") << R"({"q": -2})";
  EXPECT_EQ(run({"place", "--config", (dir / "neg.json").string(), "--out", dir.string()}).code, 2);
}

TEST(Cli, StagesWriteArtifacts) {
  const auto dir = scratch("stages");
  EXPECT_EQ(run({"place", "--preset", "fig3-nominal", "--out", dir.string()}).code, 0);
  EXPECT_EQ(observability::sensors_from_json(read_json_file((dir / "sensors.json").string())).sensor_count(), 6);
  EXPECT_EQ(run({"augment", "--preset", "fig3-nominal", "--out", dir.string()}).code, 0);
  EXPECT_TRUE(fs::exists(dir / "network.json"));
  EXPECT_EQ(run({"weights", "--preset", "fig3-nominal", "--out", dir.string()}).code, 0);
  EXPECT_TRUE(fs::exists(dir / "weights.json"));
}

TEST(Cli, DesignSimulateAndInconsistentArtifacts) {
  const auto dir = scratch("design");
  auto r = run({"design", "--preset", "fig2", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"system.json", "sensors.json", "network.json", "weights.json", "gain.json",
                        "synthesis.json", "design.json", "config.json"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  const Json design = read_json_file((dir / "design.json").string());
  EXPECT_TRUE(design["schur"].get<bool>());
  EXPECT_LT(design["rho"].get<double>(), 1.0);

  r = run({"simulate", "--preset", "fig2", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "simulation.csv").substr(0, 16), "k,sensor_id,mse\n");
  const Json sim = read_json_file((dir / "simulation.json").string());
  EXPECT_EQ(sim["horizon"], 100);
  EXPECT_EQ(sim["mse_normalization"], "per-state (||e_i||^2 / n)");

  // A gain for the wrong sensor count.
  write_text_file((dir / "gain.json").string(), dump_json(gain::gain_to_json(gain::BlockDiagGain(3, 5))));
  r = run({"simulate", "--preset", "fig2", "--out", dir.string()});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("gain.json"), std::string::npos);
}

TEST(Cli, SynthesisFailureExitsThree) {
  const auto dir = scratch("fail");
  // Forbid the fallback and cap the LMI below this instance's size.
  std::ofstream(dir / "cfg.json") << R"({"preset": "fig2", "gain": {"guard": 4, "fallback": false}})";
  const auto r = run({"design", "--config", (dir / "cfg.json").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(fs::exists(dir / "synthesis.json"));
}
