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

#include "qmeas/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmeas/random.hpp"

namespace qmeas {

CoarseGrainResult coarse_grain_search(const Hamiltonian& h, const GroupSet& groups,
                                      const SimTarget& target, std::uint64_t budget,
                                      const CoarseGrainOptions& opts,
                                      std::uint64_t seed) {
  if (opts.rounds == 0 || opts.repeats == 0 || budget == 0) {
    throw std::invalid_argument("coarse-grain search needs rounds, repeats, budget >= 1");
  }
  if (opts.test_budget % opts.rounds != 0 || opts.test_budget < opts.rounds) {
    throw std::invalid_argument("test budget is not divisible into the rounds");
  }
  CoarseGrainResult res;
  res.sub_budget = opts.test_budget / opts.rounds;
  const auto m_cg = static_cast<double>(res.sub_budget);
  const double abs_sum = h.abs_coeff_sum();

  Xoshiro256 draw_rng(derive_seed(seed, 0));
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> eps_cg(opts.rounds);
  for (std::size_t r = 0; r < opts.rounds; ++r) {
    const double m0 = draw_rng.uniform(opts.m0_min, opts.m0_max);
    eps_cg[r] = 2.0 * abs_sum * std::sqrt(m0 / m_cg);
    res.m0.push_back(m0);

    BoundSpec spec;
    spec.kind = BoundKind::kHoeffdingPerOperator;
    spec.epsilon = eps_cg[r];
    spec.budget = res.sub_budget;
    const Allocation alloc = optimize_weights(spec, groups, h, opts.solver);

    EstimatorConfig est = opts.estimator;
    est.epsilon = eps_cg[r];
    double sq = 0.0;
    for (std::size_t k = 0; k < opts.repeats; ++k) {
      Xoshiro256 rng(derive_seed(derive_seed(seed, r + 1), k));
      const auto records = execute_recipe(target.psi, groups, alloc.shots, rng);
      const double e = estimate_energy(records, groups, h, est).value;
      sq += (e - target.exact_energy) * (e - target.exact_energy);
    }
    const double rmse = std::sqrt(sq / static_cast<double>(opts.repeats));
    res.rmse.push_back(rmse);
    if (rmse < best) {
      best = rmse;
      res.best_round = r;
    }
  }
  res.epsilon_cg = eps_cg[res.best_round];
  res.epsilon = res.epsilon_cg * std::sqrt(m_cg / static_cast<double>(budget));
  return res;
}

AdaptiveTrace adaptive_rounds(const Hamiltonian& h, const GroupSet& groups,
                              const StateVector& psi, std::uint64_t budget,
                              const AdaptiveOptions& opts, std::uint64_t seed) {
  const std::size_t T = opts.rounds;
  if (T == 0) throw std::invalid_argument("adaptive allocation needs T >= 1");
  if (budget < T) throw std::invalid_argument("budget smaller than the round count");

  AdaptiveTrace trace;
  std::vector<bool> measured_group(groups.size(), false);
  for (std::size_t t = 0; t < T; ++t) {
    const std::uint64_t m_t = budget / T + (t < budget % T ? 1 : 0);

    BoundSpec spec;
    spec.epsilon = naive_epsilon(h, m_t, opts.m0);
    spec.budget = m_t;
    if (t == 0) {
      spec.kind = BoundKind::kHoeffdingPerOperator;
    } else {
      spec.kind = BoundKind::kBernstein;
      spec.bernstein_scale = opts.bernstein_scale;
      const OperatorSamples pooled = extract_signs(trace.records, groups, h);
      std::vector<OperatorStats> stats(h.size());
      for (std::size_t l = 0; l < h.size(); ++l) {
        const SignSeries& s = pooled.series[l];
        if (s.empty()) continue;  // worst case {1, 1}
        stats[l].variance = s.variance();
        stats[l].max_abs = std::min(1.0, std::abs(s.mean()));
      }
      spec.operator_stats = std::move(stats);
    }

    AdaptiveRound round;
    round.bound = spec.kind;
    round.allocation = optimize_weights(spec, groups, h, opts.solver);

    Xoshiro256 rng(derive_seed(seed, t));
    auto records = execute_recipe(psi, groups, round.allocation.shots, rng);
    EstimatorConfig est = opts.estimator;
    est.epsilon = spec.epsilon;
    round.estimate = estimate_energy(records, groups, h, est);
    for (const auto& r : records) measured_group[r.group_index] = true;
    trace.records.insert(trace.records.end(), std::make_move_iterator(records.begin()),
                         std::make_move_iterator(records.end()));
    trace.rounds.push_back(std::move(round));
  }
  EstimatorConfig est = opts.estimator;
  est.epsilon = naive_epsilon(h, budget, opts.m0);
  trace.cumulative = estimate_energy(trace.records, groups, h, est);
  trace.n_circuit = static_cast<std::size_t>(
      std::count(measured_group.begin(), measured_group.end(), true));
  return trace;
}

}  // namespace qmeas
