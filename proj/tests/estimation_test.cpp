// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qmeas/allocation.hpp"
#include "qmeas/estimation.hpp"
#include "qmeas/grouping.hpp"
#include "qmeas/simulator.hpp"

namespace qmeas {
namespace {

Hamiltonian H(const char* text) { return parse_hamiltonian(text); }
PauliString P(const char* s) { return PauliString::from_string(s); }

SignSeries series(std::initializer_list<int> v) {
  SignSeries s;
  for (int x : v) s.push_back(x);
  return s;
}

EstimatorConfig mean_cfg() {
  EstimatorConfig c;
  c.kind = EstimatorKind::kMean;
  return c;
}

TEST(SignSeries, PacksAndSums) {
  SignSeries s;
  std::mt19937_64 rng(51);
  std::vector<int> ref;
  for (int i = 0; i < 300; ++i) {
    const int v = rng() % 2 ? 1 : -1;
    s.push_back(v);
    ref.push_back(v);
  }
  ASSERT_EQ(s.size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(s[i], ref[i]);
  EXPECT_EQ(s.sum(10, 200), std::accumulate(ref.begin() + 10, ref.begin() + 200, 0LL));
  EXPECT_THROW(s.sum(5, 301), std::out_of_range);
}

TEST(ExtractSigns, ParityOfSupportedBits) {
  // Outcome (+1, -1): bit 1 set.
  const auto h = H("1 ZI\n1 IZ\n1 ZZ\n");
  const auto groups = GroupSet::from_members(h, {{0, 1, 2}});
  const std::vector<MeasurementRecord> recs = {{P("ZZ"), 0, {0b10}}};
  const auto s = extract_signs(recs, groups, h);
  EXPECT_EQ(s.series[0][0], 1);
  EXPECT_EQ(s.series[1][0], -1);
  EXPECT_EQ(s.series[2][0], -1);
}

TEST(ExtractSigns, ToyModelHitsSevenTermsPerXShot) {
  const auto h = toy_model(3);
  const auto groups = maxmin_grouping(h);
  std::size_t xg = 0;
  while (groups.group(xg).basis.to_string() != "XXX") ++xg;
  std::vector<std::uint64_t> shots(groups.size(), 0);
  shots[xg] = 40;
  Xoshiro256 rng(1);
  const auto recs = execute_recipe(ground_state(h).psi, groups, shots, rng);
  const auto hits = hit_rate(recs, groups, h);
  EXPECT_EQ(std::accumulate(hits.begin(), hits.end(), std::size_t{0}), 7u * 40u);
  EXPECT_EQ(hits[0], 0u);  // ZZZ
}

TEST(ExtractSigns, IntegrityErrors) {
  const auto h = H("1 ZI\n1 XX\n");
  const auto groups = GroupSet::from_members(h, {{0}, {1}});
  const std::vector<MeasurementRecord> bad_group = {{P("ZZ"), 5, {0}}};
  EXPECT_THROW(extract_signs(bad_group, groups, h), IntegrityError);
  const std::vector<MeasurementRecord> bad_basis = {{P("ZZ"), 1, {0}}};
  EXPECT_THROW(extract_signs(bad_basis, groups, h), IntegrityError);
  const std::vector<MeasurementRecord> bad_width = {{P("ZZZ"), 0, {0}}};
  EXPECT_THROW(extract_signs(bad_width, groups, h), IntegrityError);
  EXPECT_THROW(hit_rate(bad_group, groups, h), IntegrityError);
}

TEST(ExtractSigns, BookkeepingMatchesRecipe) {
  // Hits of each term equal sum over its groups of M_alpha.
  std::mt19937_64 pick(52);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + pick() % 5;
    const std::size_t max_l = std::min<std::size_t>(25, (1u << (2 * n)) - 3);
    const auto h = oracle::random_hamiltonian(n, 2 + pick() % max_l, pick);
    const auto groups = maxmin_grouping(h);
    std::vector<std::uint64_t> shots(groups.size());
    for (auto& s : shots) s = pick() % 6;
    Xoshiro256 rng(trial);
    const auto recs = execute_recipe(ground_state(h).psi, groups, shots, rng);
    const auto samples = extract_signs(recs, groups, h);
    std::size_t total_hits = 0, expect_total = 0;
    for (std::size_t l = 0; l < h.size(); ++l) {
      std::uint64_t expect = 0;
      for (std::size_t a : groups.groups_of(l)) expect += shots[a];
      EXPECT_EQ(samples.count(l), expect);
      total_hits += samples.count(l);
    }
    for (std::size_t a = 0; a < groups.size(); ++a)
      expect_total += shots[a] * groups.group(a).members.size();
    EXPECT_EQ(total_hits, expect_total);
  }
}

TEST(Mean, Examples) {
  EXPECT_DOUBLE_EQ(series({1, 1, -1, 1}).mean(), 0.5);
  EXPECT_DOUBLE_EQ(SignSeries{}.mean(), 0.0);
  EXPECT_DOUBLE_EQ(series({-1, -1, -1}).mean(), -1.0);
  EXPECT_DOUBLE_EQ(series({1, 1, -1, 1}).variance(), 0.75);
}

TEST(MedianOfMeans, Examples) {
  const auto s = series({1, 1, -1, 1});
  EXPECT_DOUBLE_EQ(median_of_means(s, 1), s.mean());
  // Block means {1, 0}: the two-block median is their average.
  EXPECT_DOUBLE_EQ(median_of_means(s, 2), 0.5);
  EXPECT_DOUBLE_EQ(median_of_means(SignSeries{}, 3), 0.0);

  SignSeries contaminated;
  for (int i = 0; i < 90; ++i) contaminated.push_back(1);
  for (int i = 0; i < 10; ++i) contaminated.push_back(-1);
  EXPECT_DOUBLE_EQ(contaminated.mean(), 0.8);
  EXPECT_DOUBLE_EQ(median_of_means(contaminated, 10), 1.0);
}

TEST(MedianOfMeans, MatchesDirectOracle) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 80;
    const std::size_t k = 1 + rng() % m;
    std::vector<int> v(m);
    SignSeries s;
    for (auto& x : v) {
      x = rng() % 3 ? 1 : -1;
      s.push_back(x);
    }
    const std::size_t len = m / k;
    std::vector<double> means;
    for (std::size_t b = 0; b < k; ++b)
      means.push_back(std::accumulate(v.begin() + b * len, v.begin() + (b + 1) * len, 0.0) / len);
    std::sort(means.begin(), means.end());
    const double med = k % 2 ? means[k / 2] : 0.5 * (means[k / 2 - 1] + means[k / 2]);
    EXPECT_DOUBLE_EQ(median_of_means(s, k), med);
  }
}

TEST(MomBlockCount, RulesAndClamps) {
  SignSeries s;
  for (int i = 0; i < 100; ++i) s.push_back(i % 4 == 0 ? -1 : 1);  // mean 0.5, var 0.75
  MomConfig c;
  c.rule = MomRule::kSqrtM;
  EXPECT_EQ(mom_block_count(s, c), 10u);
  c.rule = MomRule::kVarianceRatio;
  c.term_epsilon = 0.15;  // 100 * 0.0225 / 0.75 = 3
  EXPECT_EQ(mom_block_count(s, c), 3u);
  c.rule = MomRule::kVarianceScaled;
  c.term_epsilon = 100.0;  // 100 * sqrt(0.75) / 100 -> 1
  EXPECT_EQ(mom_block_count(s, c), 1u);
  c.term_epsilon = 0.01;  // clamps to M
  EXPECT_EQ(mom_block_count(s, c), 100u);
  c.rule = MomRule::kFixed;
  c.fixed_k = 0;
  EXPECT_EQ(mom_block_count(s, c), 1u);
  c.fixed_k = 1000;
  EXPECT_EQ(mom_block_count(s, c), 100u);
  EXPECT_EQ(mom_block_count(SignSeries{}, c), 0u);
  for (auto r : {MomRule::kSqrtM, MomRule::kVarianceScaled, MomRule::kVarianceRatio,
                 MomRule::kFixed})
    EXPECT_EQ(parse_mom_rule(to_string(r)), r);
  EXPECT_THROW(parse_mom_rule("median"), std::invalid_argument);
}

TEST(EstimateEnergy, OffsetAndEigenstate) {
  const auto h = H("1.0 Z\n0.25 I\n");
  const auto groups = maxmin_grouping(h);
  Xoshiro256 rng(2);
  const std::vector<std::uint64_t> shots = {20};
  const auto recs = execute_recipe(StateVector::basis_state(1, 0), groups, shots, rng);
  for (auto kind : {EstimatorKind::kMean, EstimatorKind::kMedianOfMeans}) {
    EstimatorConfig cfg;
    cfg.kind = kind;
    EXPECT_DOUBLE_EQ(estimate_energy(recs, groups, h, cfg).value, 1.25);
  }
}

TEST(EstimateEnergy, ZeroShotsGiveOffsetAndFlagTerms) {
  const auto h = H("1 ZI\n1 XX\n0.5 II\n");
  const auto groups = maxmin_grouping(h);
  const auto est = estimate_energy(std::span<const MeasurementRecord>{}, groups, h, mean_cfg());
  EXPECT_DOUBLE_EQ(est.value, 0.5);
  EXPECT_EQ(est.unmeasured, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(est.terms[0].measured);
}

TEST(EstimateEnergy, GoldenPlusStateZ) {
  // H = Z on |+>: seeded records fix the estimate; the mean is the
  // fraction difference of the recorded outcomes.
  const auto h = H("1 Z\n");
  const auto groups = maxmin_grouping(h);
  const double r2 = 1 / std::sqrt(2.0);
  Xoshiro256 rng(3);
  const std::vector<std::uint64_t> shots = {1000};
  const auto recs = execute_recipe(StateVector(1, {r2, r2}), groups, shots, rng);
  long long plus = 0;
  for (auto o : recs[0].outcomes) plus += (o & 1u) ? -1 : 1;
  const auto est = estimate_energy(recs, groups, h, mean_cfg());
  EXPECT_DOUBLE_EQ(est.value, plus / 1000.0);
  EXPECT_LT(std::abs(est.value), 5 / std::sqrt(1000.0));
  Xoshiro256 again(3);
  EXPECT_EQ(execute_recipe(StateVector(1, {r2, r2}), groups, shots, again), recs);
}

TEST(EstimateEnergy, ToyModelMeanIsExact) {
  // Each X-basis shot of the toy ground state yields signs summing to -1.
  const auto h = toy_model(3);
  const auto groups = maxmin_grouping(h);
  const auto gs = ground_state(h);
  Xoshiro256 rng(4);
  const std::vector<std::uint64_t> shots = {13, 29};
  const auto recs = execute_recipe(gs.psi, groups, shots, rng);
  EXPECT_NEAR(estimate_energy(recs, groups, h, mean_cfg()).value, gs.energy, 1e-12);
}

TEST(EstimateEnergy, ConsistentAtLargeBudget) {
  const auto h = random_structured_hamiltonian(4, 20, 5);
  const auto groups = maxmin_grouping(h);
  const auto gs = ground_state(h);
  std::vector<std::uint64_t> shots(groups.size(), 1000000 / groups.size());
  Xoshiro256 rng(5);
  const auto recs = execute_recipe(gs.psi, groups, shots, rng);
  // Median of means is consistent when eps shrinks with the budget, as in
  // the pipeline; a fixed eps pins the block length instead.
  EstimatorConfig mom;
  mom.epsilon = naive_epsilon(h, 1000000);
  for (const auto& cfg : {mean_cfg(), mom}) {
    EXPECT_NEAR(estimate_energy(recs, groups, h, cfg).value, gs.energy, 0.05)
        << to_string(cfg.kind);
  }
}

TEST(EstimateEnergy, TableMismatchThrows) {
  OperatorSamples s;
  s.series.resize(3);
  EXPECT_THROW(estimate_energy(s, H("1 Z\n"), mean_cfg()), std::invalid_argument);
}

TEST(ExtractByCoverage, CountsEveryCoveredTerm) {
  const auto h = H("1 ZI\n1 IZ\n1 XI\n");
  const std::vector<MeasurementRecord> recs = {{P("ZZ"), 0, {0, 1}}, {P("XZ"), 0, {3}}};
  const auto s = extract_signs_by_coverage(recs, h);
  EXPECT_EQ(s.count(0), 2u);
  EXPECT_EQ(s.count(1), 3u);
  EXPECT_EQ(s.count(2), 1u);
  EXPECT_EQ(s.series[2][0], -1);  // outcome 3 flips qubit 0
}

}  // namespace
}  // namespace qmeas
