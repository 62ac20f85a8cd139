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

// Simulation-driven allocation modes: epsilon search and multi-round
// variance-aware allocation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmeas/allocation.hpp"
#include "qmeas/estimation.hpp"
#include "qmeas/grouping.hpp"
#include "qmeas/hamiltonian.hpp"
#include "qmeas/simulator.hpp"

namespace qmeas {

/// State the simulated rounds run against.
struct SimTarget {
  const StateVector& psi;
  double exact_energy;
};

struct CoarseGrainOptions {
  std::uint64_t test_budget = 1000;  // M_test, split into `rounds` equal parts
  std::size_t rounds = 10;
  std::size_t repeats = 10;  // n_rep per candidate
  double m0_min = 0.1;
  double m0_max = 10.0;
  EstimatorConfig estimator{};  // epsilon is overwritten per candidate
  SolverOptions solver{};
};

struct CoarseGrainResult {
  double epsilon = 0.0;     // rescaled for the final budget
  double epsilon_cg = 0.0;  // winning candidate at M_cg
  std::uint64_t sub_budget = 0;
  std::size_t best_round = 0;
  std::vector<double> m0;    // drawn per round
  std::vector<double> rmse;  // per round
};

/// Each round draws M0 ~ U[m0_min, m0_max], allocates with the per-operator
/// bound at eps_cg = 2 sum|a| sqrt(M0 / M_cg) and M_cg shots, and scores the
/// candidate by RMSE over `repeats` simulated estimates. The winner is
/// returned as eps = eps_cg * sqrt(M_cg / budget). Throws
/// std::invalid_argument unless rounds divides test_budget.
CoarseGrainResult coarse_grain_search(const Hamiltonian& h, const GroupSet& groups,
                                      const SimTarget& target, std::uint64_t budget,
                                      const CoarseGrainOptions& opts,
                                      std::uint64_t seed);

struct AdaptiveOptions {
  std::size_t rounds = 2;  // T
  double m0 = 1.0;         // per-round epsilon = naive_epsilon(h, M^t, m0)
  BernsteinScale bernstein_scale = BernsteinScale::kPerTerm;
  EstimatorConfig estimator{};
  SolverOptions solver{};
};

struct AdaptiveRound {
  BoundKind bound = BoundKind::kHoeffdingPerOperator;
  Allocation allocation;
  EnergyEstimate estimate;  // from this round's records only
};

struct AdaptiveTrace {
  std::vector<AdaptiveRound> rounds;
  EnergyEstimate cumulative;  // all records pooled
  std::vector<MeasurementRecord> records;
  std::size_t n_circuit = 0;  // distinct groups measured over all rounds
};

/// M split equally over T rounds (remainder to the earliest). Round 1 uses
/// the per-operator Hoeffding bound; later rounds use the Bernstein bound
/// with variance and |mean| pooled from all earlier records. Terms not yet
/// measured get variance 1 and max 1.
AdaptiveTrace adaptive_rounds(const Hamiltonian& h, const GroupSet& groups,
                              const StateVector& psi, std::uint64_t budget,
                              const AdaptiveOptions& opts, std::uint64_t seed);

}  // namespace qmeas
