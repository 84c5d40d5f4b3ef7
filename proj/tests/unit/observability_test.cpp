#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "resest/common/error.hpp"
#include "resest/common/linalg.hpp"
#include "resest/observability/numeric.hpp"
#include "resest/observability/structural.hpp"
#include "resest/weights/consensus.hpp"

using namespace resest;
using namespace resest::observability;

namespace {

SparsityPattern random_pattern(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng)) pos.push_back({i, j});
  return SparsityPattern::square(n, pos);
}

// Chain 0 -> 1 -> 2 into the cycle 2 -> 3 -> 4 -> 2.
SparsityPattern chain_into_cycle() {
  return SparsityPattern::square(5, {{1, 0}, {2, 1}, {3, 2}, {4, 3}, {2, 4}});
}

}  // namespace

TEST(Pattern, JsonRoundTripAndReplication) {
  const auto p = chain_into_cycle();
  EXPECT_EQ(pattern_from_json(pattern_to_json(p)), p);
  const auto r = p.replicated(3);
  EXPECT_EQ(r.rows(), 15);
  EXPECT_EQ(r.nonzero_count(), 3 * p.nonzero_count());
  EXPECT_TRUE(r.has(7, 6));
  EXPECT_FALSE(r.has(7, 1));
}

TEST(Pattern, RealizationRespectsSupport) {
  std::mt19937_64 rng(1);
  const auto p = chain_into_cycle();
  const Matrix a = random_realization(p, rng);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (p.has(i, j)) {
        EXPECT_GE(std::abs(a(i, j)), 0.5);
        EXPECT_LE(std::abs(a(i, j)), 1.5);
      } else {
        EXPECT_EQ(a(i, j), 0.0);
      }
    }
}

TEST(Structural, ParentClassesOfChain) {
  const auto eq = equivalence_classes(chain_into_cycle());
  ASSERT_EQ(eq.classes.size(), 1u);
  EXPECT_EQ(eq.classes[0], (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(eq.non_parent_states, (std::vector<int>{0, 1}));
}

TEST(Structural, PlacementCounts) {
  // Two-cycles {0,1}, {2,3}, {4,5} fed by state 6.
  const auto p = SparsityPattern::square(7, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {4, 5}, {5, 4}, {0, 6}, {2, 6}, {4, 6}});
  EXPECT_EQ(place_sensors(p, 0).sensor_count(), 3);
  const auto s = place_sensors(p, 1);
  EXPECT_EQ(s.sensor_count(), 6);
  EXPECT_TRUE(check_structural_observability(p, s));
  // Any single removal keeps every class covered.
  for (int i = 0; i < 6; ++i) {
    const std::vector<int> gone{i};
    EXPECT_TRUE(check_structural_observability(p, s.without_sensors(gone)));
  }
  EXPECT_THROW(place_sensors(p, 2, {false}), InvalidInput);
  EXPECT_EQ(place_sensors(p, 2).sensor_count(), 9);
}

TEST(Sensors, Validation) {
  EXPECT_THROW(SensorSuite(3, {{0, {3}, -1}}), InvalidInput);
  EXPECT_THROW(SensorSuite(3, {{0, {1, 1}, -1}}), InvalidInput);
  const SensorSuite s(3, {{0, {2}, 0}, {1, {0, 1}, -1}});
  EXPECT_EQ(sensors_from_json(sensors_to_json(s)), s);
  const Matrix c = s.stacked_output_matrix();
  EXPECT_EQ(c.rows(), 3);
  EXPECT_EQ(c(0, 2), 1.0);
  EXPECT_EQ(s.dc().rows(), 6);
  EXPECT_EQ(s.dc()(2, 2), 1.0);
  EXPECT_EQ(s.dc()(3, 3), 1.0);
  EXPECT_EQ(s.dc()(5, 5), 0.0);
}

TEST(Numeric, RankMatchesKalmanSvd) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> size(2, 8);
  int deficient = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = size(rng);
    const auto p = random_pattern(n, 0.25, rng);
    const Matrix a = random_realization(p, rng);
    const Matrix c = Matrix::Identity(n, n).topRows(1 + trial % 2);
    const int rank = numeric_observability_rank(a, c);
    EXPECT_EQ(rank, oracle::kalman_rank(a, c)) << "trial " << trial;
    if (rank < n) ++deficient;
  }
  EXPECT_GT(deficient, 0);  // the sweep exercises both outcomes
}

TEST(Numeric, StructuralImpliesGenericRank) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 8;
    const auto p = random_pattern(n, 0.2, rng);
    const auto s = place_sensors(p, 0);
    ASSERT_TRUE(check_structural_observability(p, s));
    bool reached = false;
    for (int draw = 0; draw < 10 && !reached; ++draw)
      reached = numeric_observability_rank(random_realization(p, rng), s.stacked_output_matrix()) == n;
    EXPECT_TRUE(reached) << "trial " << trial;
  }
}

TEST(Numeric, EquivalentOutputs) {
  std::mt19937_64 rng(3);
  const auto p = chain_into_cycle();
  const Matrix a = random_realization(p, rng);
  const SensorSuite both(5, {{0, {2}, 0}, {1, {4}, 0}});
  EXPECT_EQ(numeric_observability_rank(a, both.stacked_output_matrix()), 5);
  EXPECT_EQ(numeric_observability_rank(a, Matrix::Zero(0, 5)), 0);
}

TEST(Distributed, DenseRankAgreesWithKronOracle) {
  std::mt19937_64 rng(6);
  const auto p = SparsityPattern::square(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {0, 2}});
  const Matrix a = random_realization(p, rng);
  const auto s = place_sensors(p, 1);
  const auto g = graphs::complete_graph(s.sensor_count());
  const auto w = weights::random_stochastic_weights(g, 4);
  const auto d = distributed_observability_check(w, a, s);
  ASSERT_TRUE(d.dense_checked);
  EXPECT_EQ(*d.rank, oracle::kalman_rank(kron(w.matrix(), a), s.dc()));
  EXPECT_TRUE(d.observable);
  EXPECT_TRUE(d.structural_proxy);

  const auto big = distributed_observability_check(w, a, s, 4);
  EXPECT_TRUE(big.guard_exceeded);
  EXPECT_FALSE(big.dense_checked);
  EXPECT_EQ(big.observable, big.structural_proxy);
}

TEST(Distributed, RepeatedWeightEigenvaluesLoseRank) {
  // Metropolis weights on K_{3,3} have eigenvalue 1/4 four times, and the
  // Kronecker pair loses rank although every local condition holds.
  const auto p = SparsityPattern::square(7, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {4, 5}, {5, 4}, {0, 6}, {2, 6}, {4, 6}});
  std::mt19937_64 rng(1);
  const Matrix a = random_realization(p, rng);
  const auto s = place_sensors(p, 1);
  graphs::DiGraph k33(6, false);
  for (int u : {0, 3, 4})
    for (int v : {1, 2, 5}) k33.add_edge(u, v);
  const auto sym = distributed_observability_check(weights::metropolis_hastings_weights(k33), a, s);
  EXPECT_TRUE(sym.structural_proxy);
  EXPECT_LT(*sym.rank, 42);
  const auto gen = distributed_observability_check(weights::random_stochastic_weights(k33, 5), a, s);
  EXPECT_EQ(*gen.rank, 42);
}
