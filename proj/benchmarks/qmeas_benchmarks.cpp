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

#include <benchmark/benchmark.h>

#include <vector>

#include "qmeas/allocation.hpp"
#include "qmeas/estimation.hpp"
#include "qmeas/grouping.hpp"
#include "qmeas/hamiltonian.hpp"
#include "qmeas/random.hpp"
#include "qmeas/simulator.hpp"

namespace {

using namespace qmeas;

// Arguments: qubits, terms.
Hamiltonian make_h(const benchmark::State& state) {
  return random_structured_hamiltonian(static_cast<std::size_t>(state.range(0)),
                                       static_cast<std::size_t>(state.range(1)), 42);
}

void BM_QwcPairs(benchmark::State& state) {
  const auto h = make_h(state);
  for (auto _ : state) {
    std::size_t edges = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j) edges += qwc(h.term(i).op, h.term(j).op);
    benchmark::DoNotOptimize(edges);
  }
  state.SetItemsProcessed(state.iterations() * h.size() * (h.size() - 1) / 2);
}
BENCHMARK(BM_QwcPairs)->Args({8, 200})->Args({12, 1000});

void BM_MaxminGrouping(benchmark::State& state) {
  const auto h = make_h(state);
  for (auto _ : state) benchmark::DoNotOptimize(maxmin_grouping(h));
}
BENCHMARK(BM_MaxminGrouping)->Args({6, 50})->Args({8, 200})->Args({12, 500})
    ->Unit(benchmark::kMillisecond);

void BM_OptimizeWeights(benchmark::State& state) {
  const auto h = make_h(state);
  const auto g = maxmin_grouping(h);
  const std::uint64_t M = 1000;
  const auto spec =
      make_bound_spec(BoundKind::kHoeffdingPerOperator, naive_epsilon(h, M), M, g, h);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_weights(spec, g, h));
}
BENCHMARK(BM_OptimizeWeights)->Args({6, 50})->Args({8, 200})->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& state) {
  const auto h = make_h(state);
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(h));
}
BENCHMARK(BM_GroundState)->Args({6, 50})->Args({8, 200})->Unit(benchmark::kMillisecond);

void BM_SampleAndEstimate(benchmark::State& state) {
  const auto h = make_h(state);
  const auto g = maxmin_grouping(h);
  const auto gs = ground_state(h);
  const std::uint64_t M = static_cast<std::uint64_t>(state.range(2));
  const auto alloc = optimize_weights(
      make_bound_spec(BoundKind::kHoeffdingPerOperator, naive_epsilon(h, M), M, g, h), g, h);
  Xoshiro256 rng(7);
  for (auto _ : state) {
    const auto recs = execute_recipe(gs.psi, g, alloc.shots, rng);
    benchmark::DoNotOptimize(estimate_energy(recs, g, h, EstimatorConfig{}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(M));
}
BENCHMARK(BM_SampleAndEstimate)->Args({8, 200, 1000})->Args({8, 200, 100000});

}  // namespace

BENCHMARK_MAIN();
