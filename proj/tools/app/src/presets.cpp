#include "resest/app/presets.hpp"

#include <random>

#include "resest/common/error.hpp"
#include "resest/common/rng.hpp"
#include "resest/observability/structural.hpp"

namespace resest::app {

using observability::SparsityPattern;

SparsityPattern fig3_pattern() {
  return SparsityPattern::square(7, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {4, 5}, {5, 4}, {0, 6}, {2, 6}, {4, 6}});
}

graphs::DiGraph fig3_network() {
  graphs::DiGraph g(6, false);
  for (int u : {0, 3, 4})
    for (int v : {1, 2, 5}) g.add_edge(std::min(u, v), std::max(u, v));
  return g;
}

std::vector<graphs::Edge> fig3_failed_links() { return {{0, 1}, {1, 3}, {2, 3}}; }

SparsityPattern fig2_pattern() {
  return SparsityPattern::square(5, {{1, 0}, {2, 1}, {3, 2}, {4, 3}, {2, 4}});
}

observability::SensorSuite fig2_sensors() {
  return observability::SensorSuite(5, {{0, {2}, 0}, {1, {4}, 0}});
}

graphs::DiGraph fig2_network() {
  graphs::DiGraph g(8, false);
  for (int v = 0; v < 8; ++v)
    for (int bit = 0; bit < 3; ++bit) {
      const int u = v ^ (1 << bit);
      if (v < u) g.add_edge(v, u);
    }
  return g;
}

SparsityPattern replicated_pattern(int copies) {
  if (copies < 1) throw InvalidInput("need at least one replica");
  SparsityPattern p = fig3_pattern().replicated(copies);
  if (copies > 1)
    for (int r = 0; r < copies; ++r) p.set(((r + 1) % copies) * 7 + 0, r * 7 + 6);
  return p;
}

graphs::DiGraph circulant_network(int n, const std::vector<int>& offsets) {
  graphs::DiGraph g(n, false);
  for (int i = 0; i < n; ++i)
    for (int o : offsets) {
      const int j = (i + o) % n;
      if (j != i && !g.has_edge(i, j)) g.add_edge(i, j);
    }
  return g;
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3-nominal", "fig6-linkfail", "fig6-nodefail", "fig7-large"};
}

Preset make_preset(const std::string& name, std::uint64_t seed) {
  Preset p;
  p.name = name;
  if (name == "fig2") {
    p.description = "5-state chain into a 3-cycle parent SCC with two equivalent outputs; 3-cube network";
    p.pattern = fig2_pattern();
    p.q = 0;
    p.network = fig2_network();
    p.sensors = fig2_sensors();
    p.scheme = weights::WeightScheme::random;
    return p;
  }
  if (name == "fig3-nominal" || name == "fig6-linkfail" || name == "fig6-nodefail") {
    p.pattern = fig3_pattern();
    p.q = 1;
    p.network = fig3_network();
    // Symmetric weights on K_{3,3} repeat eigenvalues of W and lose
    // observability of W (x) A; generic weights keep it.
    p.scheme = weights::WeightScheme::random;
    p.description = "7-state plant with 3 parent SCCs, 6 sensors on K_{3,3}";
    p.scenario.name = name == "fig3-nominal" ? "none" : name;
    if (name == "fig6-linkfail") {
      p.description += ", 3 links removed at k = 50";
      p.scenario.events.push_back({50, sim::FailureKind::remove_links, fig3_failed_links(), {}});
    } else if (name == "fig6-nodefail") {
      // One sensor from a duplicated class, picked by the seed.
      const auto suite = observability::place_sensors(p.pattern, p.q);
      Rng rng(derive_seed(seed, 0x6e6f6465));
      std::uniform_int_distribution<int> pick(0, suite.sensor_count() - 1);
      const int victim = pick(rng);
      p.description += ", sensor " + std::to_string(victim) + " removed at k = 50";
      p.scenario.events.push_back({50, sim::FailureKind::remove_nodes, {}, {victim}});
    }
    return p;
  }
  if (name == "fig7-large") {
    p.description = "10 coupled replicas of the 7-state plant (n = 70, 30 parent SCCs), 60 sensors";
    p.pattern = replicated_pattern(10);
    p.q = 1;
    p.rho_target = 1.01;
    p.network = circulant_network(60, {1, 7, 20});
    p.scheme = weights::WeightScheme::metropolis;
    p.runs = 10;
    return p;
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidInput("unknown preset \"" + name + "\" (known: " + known + ")");
}

}  // namespace resest::app
