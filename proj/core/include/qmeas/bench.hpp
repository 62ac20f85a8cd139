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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmeas/allocation.hpp"
#include "qmeas/estimation.hpp"
#include "qmeas/grouping.hpp"
#include "qmeas/hamiltonian.hpp"
#include "qmeas/random.hpp"
#include "qmeas/simulator.hpp"
#include "qmeas/tuning.hpp"

namespace qmeas {

enum class Method {
  kRogsNaive,         // optimized allocation at the naive epsilon
  kRogsCoarse,        // optimized allocation at a searched epsilon
  kRogsAdaptive,      // multi-round, variance-aware
  kEvenDistribution,  // floor(M/A) shots per group
  kUniformShadow,     // i.i.d. uniform random Pauli bases
};

std::string to_string(Method m);
/// "rogs_naive", "rogs_coarse", "rogs_adaptive", "even_distribution",
/// "uniform_shadow". Throws std::invalid_argument.
Method parse_method(const std::string& name);
const std::vector<Method>& all_methods();

struct ExperimentSpec {
  std::string label;  // written to the hamiltonian column
  std::uint64_t budget = 1000;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  std::vector<Method> methods = {Method::kRogsNaive};
  BoundKind bound = BoundKind::kHoeffdingPerOperator;
  std::optional<double> epsilon;  // default: naive_epsilon(h, M, m0)
  double m0 = 1.0;
  EstimatorConfig estimator{};
  GroupingOptions grouping{};
  CoarseGrainOptions coarse{};
  AdaptiveOptions adaptive{};
  std::size_t threads = 0;  // 0: hardware concurrency
  bool timing = false;      // fill wall_ms; off keeps output reproducible
};

struct MethodResult {
  Method method = Method::kRogsNaive;
  double rmse = 0.0;
  double mae = 0.0;
  double n_circuit = 0.0;  // mean over repeats
  std::size_t n_groups = 0;
  std::vector<double> estimates;
  std::optional<double> wall_ms;
};

struct BenchResult {
  std::string label;
  double exact_energy = 0.0;
  std::uint64_t budget = 0;
  std::size_t repeats = 0;
  std::uint64_t seed = 0;
  std::vector<MethodResult> methods;
};

/// floor(M/A) shots per group, remainder one each to the lowest indices.
std::vector<std::uint64_t> even_distribution(std::size_t n_groups,
                                             std::uint64_t budget);

/// `shots` single-shot records, each in a basis with i.i.d. uniform axes.
std::vector<MeasurementRecord> uniform_shadow_records(const StateVector& psi,
                                                      std::uint64_t shots,
                                                      Xoshiro256& rng);

/// Repeat-independent part of a method: the fixed shot recipe (empty for the
/// adaptive and shadow methods) and the epsilon it was built with.
struct MethodPlan {
  Method method = Method::kRogsNaive;
  std::vector<std::uint64_t> shots;
  double epsilon = 0.0;
};

MethodPlan plan_method(Method method, const Hamiltonian& h, const GroundState& gs,
                       const GroupSet& groups, const ExperimentSpec& spec);

struct TrialOutcome {
  EnergyEstimate estimate;
  std::size_t n_circuit = 0;  // distinct circuits executed
};

/// Seed of repeat `repeat` of `method`.
std::uint64_t trial_seed(const ExperimentSpec& spec, Method method,
                         std::size_t repeat);

TrialOutcome run_trial(const MethodPlan& plan, const Hamiltonian& h,
                       const GroundState& gs, const GroupSet& groups,
                       const ExperimentSpec& spec, std::uint64_t seed);

/// Runs every requested method for `repeats` seeded trials. Repeat r of
/// method m uses trial_seed(spec, m, r), so results do not depend on the
/// thread count.
BenchResult run_bench(const Hamiltonian& h, const ExperimentSpec& spec);

/// Columns: method, hamiltonian, M, repeats, rmse, mae, n_circuit, n_groups,
/// seed, wall_ms.
void write_bench_csv(std::ostream& out, const BenchResult& result,
                     bool header = true);

}  // namespace qmeas
