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
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qmeas/grouping.hpp"
#include "qmeas/simulator.hpp"

namespace qmeas {
namespace {

using oracle::cd;

Hamiltonian H(const char* text) { return parse_hamiltonian(text); }
PauliString P(const char* s) { return PauliString::from_string(s); }

int sign_of(const MeasurementRecord& r, std::size_t shot, const PauliString& op) {
  int s = 1;
  for (std::size_t q : op.support()) s *= r.value(shot, q);
  return s;
}

TEST(StateVector, ValidatesShapeAndNorm) {
  EXPECT_THROW(StateVector(2, {1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(StateVector(1, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(StateVector(15, {}), std::invalid_argument);
  EXPECT_NO_THROW(StateVector(1, {cd(0, 1), 0.0}));
}

TEST(GroundState, SingleQubitZ) {
  const auto gs = ground_state(H("1 Z\n"));
  EXPECT_NEAR(gs.energy, -1.0, 1e-12);
  EXPECT_NEAR(std::abs(gs.psi[0]), 0.0, 1e-12);
  EXPECT_NEAR(gs.psi[1].real(), 1.0, 1e-12);
}

TEST(GroundState, SingleQubitX) {
  const auto gs = ground_state(H("1 X\n"));
  EXPECT_NEAR(gs.energy, -1.0, 1e-12);
  EXPECT_NEAR(gs.psi[0].real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(gs.psi[1].real(), -1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(gs.psi[0].imag(), 0.0, 1e-12);
}

TEST(GroundState, IdentityOffsetIncluded) {
  EXPECT_NEAR(ground_state(H("1 Z\n0.25 I\n")).energy, -0.75, 1e-12);
}

TEST(GroundState, DegenerateSpacePickIsDeterministic) {
  // ZZ has the two-dimensional ground space span{|01>, |10>}; index 1 is the
  // lowest basis state with overlap, so the pick is |01> (bit 0 set).
  const auto gs = ground_state(H("1 ZZ\n"));
  EXPECT_NEAR(gs.energy, -1.0, 1e-12);
  EXPECT_NEAR(gs.psi[1].real(), 1.0, 1e-12);
  EXPECT_NEAR(gs.psi[1].imag(), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(gs.psi[2]), 0.0, 1e-12);
}

TEST(GroundState, ToyModelMatchesDenseOracle) {
  const auto h = toy_model(3);
  EXPECT_NEAR(ground_state(h).energy,
              oracle::min_eigenvalue(oracle::hamiltonian_dense(h)), 1e-10);
}

TEST(GroundState, RandomHamiltoniansMatchDenseOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto h = oracle::random_hamiltonian(n, 1 + rng() % std::min<std::size_t>(30, (1u << (2 * n)) - 1), rng);
    const auto gs = ground_state(h);
    EXPECT_NEAR(gs.energy, oracle::min_eigenvalue(oracle::hamiltonian_dense(h)), 1e-10);
    // <psi|H|psi> reproduces the eigenvalue.
    EXPECT_NEAR(expectation(h, gs.psi), gs.energy, 1e-9);
  }
}

TEST(Expectation, MatchesMatrixContraction) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<cd> amps(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : amps) {
      a = cd(nd(rng), nd(rng));
      norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    const StateVector psi(n, amps);
    const auto op = oracle::random_pauli(n, rng);
    EXPECT_NEAR(expectation(P(op.c_str()), psi), oracle::expectation_dense(op, amps), 1e-12)
        << op;
  }
}

TEST(SampleBasis, EigenstateIsDeterministic) {
  Xoshiro256 rng(1);
  const auto r = sample_basis(StateVector::basis_state(2, 0), P("ZZ"), 50, rng);
  ASSERT_EQ(r.shots(), 50u);
  for (std::size_t m = 0; m < r.shots(); ++m) {
    EXPECT_EQ(r.value(m, 0), 1);
    EXPECT_EQ(r.value(m, 1), 1);
  }
}

TEST(SampleBasis, PlusStateInXBasis) {
  const double r2 = 1 / std::sqrt(2.0);
  Xoshiro256 rng(2);
  const auto r = sample_basis(StateVector(1, {r2, r2}), P("X"), 100, rng);
  for (std::size_t m = 0; m < r.shots(); ++m) EXPECT_EQ(r.value(m, 0), 1);
}

TEST(SampleBasis, YEigenstate) {
  // (|0> + i|1>)/sqrt2 is the +1 eigenstate of Y.
  const double r2 = 1 / std::sqrt(2.0);
  Xoshiro256 rng(3);
  const auto r = sample_basis(StateVector(1, {r2, cd(0, r2)}), P("Y"), 100, rng);
  for (std::size_t m = 0; m < r.shots(); ++m) EXPECT_EQ(r.value(m, 0), 1);
  const auto r_minus = sample_basis(StateVector(1, {r2, cd(0, -r2)}), P("Y"), 100, rng);
  for (std::size_t m = 0; m < r_minus.shots(); ++m) EXPECT_EQ(r_minus.value(m, 0), -1);
}

TEST(SampleBasis, BellStateParityIsFixed) {
  const double r2 = 1 / std::sqrt(2.0);
  Xoshiro256 rng(4);
  const auto r = sample_basis(StateVector(2, {r2, 0, 0, r2}), P("ZZ"), 2000, rng);
  int plus0 = 0;
  for (std::size_t m = 0; m < r.shots(); ++m) {
    EXPECT_EQ(r.value(m, 0) * r.value(m, 1), 1);
    plus0 += r.value(m, 0) == 1;
  }
  EXPECT_NEAR(plus0 / 2000.0, 0.5, 5 * 0.5 / std::sqrt(2000.0));
}

TEST(SampleBasis, HadamardRotationChiSquare) {
  // X-basis readout of Z eigenstates is a fair coin on each qubit.
  Xoshiro256 rng(5);
  for (std::uint64_t idx : {0u, 1u, 2u, 3u}) {
    const auto r = sample_basis(StateVector::basis_state(2, idx), P("XX"), 4000, rng);
    std::array<double, 4> counts{};
    for (auto o : r.outcomes) counts[o] += 1;
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    // 3 degrees of freedom: P(chi2 > 21.1) ~ 1e-4.
    EXPECT_LT(chi2, 21.1) << idx;
  }
}

TEST(SampleBasis, RequiresFullSupport) {
  Xoshiro256 rng(6);
  EXPECT_THROW(sample_basis(StateVector::basis_state(2, 0), P("ZI"), 1, rng),
               std::invalid_argument);
}

TEST(SampleBasis, SignMeansConvergeOnGroundStates) {
  std::mt19937_64 pick(43);
  const auto h = random_structured_hamiltonian(5, 30, 77);
  const auto gs = ground_state(h);
  const auto groups = maxmin_grouping(h);
  Xoshiro256 rng(7);
  for (const auto& g : groups.groups()) {
    const auto rec = sample_basis(gs.psi, g.basis, 100000, rng);
    for (std::size_t l : g.members) {
      const auto& op = h.term(l).op;
      double sum = 0.0;
      for (std::size_t m = 0; m < rec.shots(); ++m) sum += sign_of(rec, m, op);
      const double mean = sum / rec.shots();
      const double exact = expectation(op, gs.psi);
      const double se = std::sqrt(std::max(1e-12, 1 - exact * exact) / rec.shots());
      EXPECT_LE(std::abs(mean - exact), 5 * se + 1e-12) << op.to_string();
    }
  }
}

TEST(SampleBasis, SeedDeterminism) {
  const auto gs = ground_state(toy_model(3));
  Xoshiro256 a(99), b(99);
  EXPECT_EQ(sample_basis(gs.psi, P("XYZ"), 500, a), sample_basis(gs.psi, P("XYZ"), 500, b));
}

TEST(ExecuteRecipe, SkipsEmptyGroupsAndConservesShots) {
  const auto h = H("1 ZZ\n1 XX\n");
  const auto groups = GroupSet::from_members(h, {{0}, {1}});
  const auto psi = ground_state(h).psi;
  Xoshiro256 rng(8);
  const std::vector<std::uint64_t> s05 = {0, 5};
  const auto r1 = execute_recipe(psi, groups, s05, rng);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0].group_index, 1u);
  EXPECT_EQ(r1[0].shots(), 5u);
  EXPECT_EQ(r1[0].basis, groups.group(1).basis);

  const std::vector<std::uint64_t> s34 = {3, 4};
  const auto r2 = execute_recipe(psi, groups, s34, rng);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_EQ(r2[0].shots() + r2[1].shots(), 7u);

  const std::vector<std::uint64_t> wrong = {1};
  EXPECT_THROW(execute_recipe(psi, groups, wrong, rng), std::invalid_argument);
}

TEST(RecordsJsonl, RoundTrip) {
  const auto h = toy_model(3);
  const auto groups = maxmin_grouping(h);
  Xoshiro256 rng(9);
  const std::vector<std::uint64_t> shots = {7, 3};
  const auto recs = execute_recipe(ground_state(h).psi, groups, shots, rng);
  std::stringstream ss;
  write_records_jsonl(ss, recs);
  EXPECT_EQ(read_records_jsonl(ss), recs);

  std::stringstream bad(R"({"basis":"ZZ","group_index":0,"outcomes":[[1,0]]})");
  EXPECT_THROW(read_records_jsonl(bad), std::invalid_argument);
}

}  // namespace
}  // namespace qmeas
