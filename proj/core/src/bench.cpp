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

#include "qmeas/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

namespace qmeas {

std::string to_string(Method m) {
  switch (m) {
    case Method::kRogsNaive:
      return "rogs_naive";
    case Method::kRogsCoarse:
      return "rogs_coarse";
    case Method::kRogsAdaptive:
      return "rogs_adaptive";
    case Method::kEvenDistribution:
      return "even_distribution";
    case Method::kUniformShadow:
      return "uniform_shadow";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : all_methods()) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method: " + name);
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> kAll = {
      Method::kRogsNaive, Method::kRogsCoarse, Method::kRogsAdaptive,
      Method::kEvenDistribution, Method::kUniformShadow};
  return kAll;
}

std::vector<std::uint64_t> even_distribution(std::size_t n_groups,
                                             std::uint64_t budget) {
  if (n_groups == 0) throw std::invalid_argument("no groups");
  std::vector<std::uint64_t> shots(n_groups, budget / n_groups);
  for (std::size_t a = 0; a < budget % n_groups; ++a) ++shots[a];
  return shots;
}

std::vector<MeasurementRecord> uniform_shadow_records(const StateVector& psi,
                                                      std::uint64_t shots,
                                                      Xoshiro256& rng) {
  static constexpr Axis kAxes[3] = {Axis::X, Axis::Y, Axis::Z};
  const std::size_t n = psi.n_qubits();
  std::vector<MeasurementRecord> records;
  records.reserve(shots);
  for (std::uint64_t s = 0; s < shots; ++s) {
    PauliString basis(n);
    for (std::size_t q = 0; q < n; ++q) basis.set_axis(q, kAxes[rng.below(3)]);
    records.push_back(BasisSampler(psi, basis).sample(1, rng));
  }
  return records;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t method_seed(std::uint64_t seed, Method method) {
  return derive_seed(seed, static_cast<std::uint64_t>(method));
}

}  // namespace

std::uint64_t trial_seed(const ExperimentSpec& spec, Method method,
                         std::size_t repeat) {
  return derive_seed(method_seed(spec.seed, method), repeat);
}

MethodPlan plan_method(Method method, const Hamiltonian& h, const GroundState& gs,
                       const GroupSet& groups, const ExperimentSpec& spec) {
  MethodPlan plan;
  plan.method = method;
  plan.epsilon = spec.epsilon.value_or(naive_epsilon(h, spec.budget, spec.m0));
  switch (method) {
    case Method::kRogsCoarse: {
      const CoarseGrainResult cg = coarse_grain_search(
          h, groups, SimTarget{gs.psi, gs.energy}, spec.budget, spec.coarse,
          derive_seed(method_seed(spec.seed, method), ~0ULL));
      plan.epsilon = cg.epsilon;
      [[fallthrough]];
    }
    case Method::kRogsNaive:
      plan.shots = optimize_weights(
                       make_bound_spec(spec.bound, plan.epsilon, spec.budget, groups, h),
                       groups, h)
                       .shots;
      break;
    case Method::kEvenDistribution:
      plan.shots = even_distribution(groups.size(), spec.budget);
      break;
    case Method::kRogsAdaptive:
    case Method::kUniformShadow:
      break;
  }
  return plan;
}

TrialOutcome run_trial(const MethodPlan& plan, const Hamiltonian& h,
                       const GroundState& gs, const GroupSet& groups,
                       const ExperimentSpec& spec, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  TrialOutcome out;
  switch (plan.method) {
    case Method::kRogsNaive:
    case Method::kRogsCoarse:
    case Method::kEvenDistribution: {
      EstimatorConfig est = spec.estimator;
      est.epsilon = plan.epsilon;
      const auto records = execute_recipe(gs.psi, groups, plan.shots, rng);
      out.estimate = estimate_energy(records, groups, h, est);
      out.n_circuit = records.size();
      break;
    }
    case Method::kRogsAdaptive: {
      AdaptiveOptions opts = spec.adaptive;
      opts.m0 = spec.m0;
      opts.estimator = spec.estimator;
      AdaptiveTrace trace = adaptive_rounds(h, groups, gs.psi, spec.budget, opts, rng());
      out.estimate = std::move(trace.cumulative);
      out.n_circuit = trace.n_circuit;
      break;
    }
    case Method::kUniformShadow: {
      // Hit-conditioned plain means.
      const auto records = uniform_shadow_records(gs.psi, spec.budget, rng);
      EstimatorConfig est;
      est.kind = EstimatorKind::kMean;
      out.estimate = estimate_energy(extract_signs_by_coverage(records, h), h, est);
      std::set<std::string> bases;
      for (const auto& rec : records) bases.insert(rec.basis.to_string());
      out.n_circuit = bases.size();
      break;
    }
  }
  return out;
}

BenchResult run_bench(const Hamiltonian& h, const ExperimentSpec& spec) {
  if (spec.repeats == 0) throw std::invalid_argument("repeats must be >= 1");
  if (spec.budget == 0) throw std::invalid_argument("budget must be >= 1");
  if (h.empty()) throw std::invalid_argument("Hamiltonian has no terms");

  const GroundState gs = ground_state(h);
  const GroupSet groups = maxmin_grouping(h, spec.grouping);

  BenchResult out;
  out.label = spec.label;
  out.exact_energy = gs.energy;
  out.budget = spec.budget;
  out.repeats = spec.repeats;
  out.seed = spec.seed;

  for (Method method : spec.methods) {
    const auto t0 = std::chrono::steady_clock::now();
    const MethodPlan plan = plan_method(method, h, gs, groups, spec);
    std::vector<double> estimates(spec.repeats);
    std::vector<std::size_t> circuits(spec.repeats);
    parallel_for(spec.repeats, spec.threads, [&](std::size_t r) {
      const TrialOutcome t =
          run_trial(plan, h, gs, groups, spec, trial_seed(spec, method, r));
      estimates[r] = t.estimate.value;
      circuits[r] = t.n_circuit;
    });

    MethodResult res;
    res.method = method;
    res.n_groups = groups.size();
    double sq = 0.0, abs_err = 0.0, n_circ = 0.0;
    for (std::size_t r = 0; r < spec.repeats; ++r) {
      const double err = estimates[r] - gs.energy;
      sq += err * err;
      abs_err += std::abs(err);
      n_circ += static_cast<double>(circuits[r]);
    }
    const auto reps = static_cast<double>(spec.repeats);
    res.estimates = std::move(estimates);
    res.rmse = std::sqrt(sq / reps);
    res.mae = abs_err / reps;
    res.n_circuit = n_circ / reps;
    if (spec.timing) {
      res.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    }
    out.methods.push_back(std::move(res));
  }
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// RFC 4180 quoting for free-text fields.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void write_bench_csv(std::ostream& out, const BenchResult& result, bool header) {
  if (header) {
    out << "method,hamiltonian,M,repeats,rmse,mae,n_circuit,n_groups,seed,wall_ms\n";
  }
  for (const auto& m : result.methods) {
    out << to_string(m.method) << ',' << csv_field(result.label) << ','
        << result.budget << ',' << result.repeats << ',' << fmt_double(m.rmse)
        << ',' << fmt_double(m.mae) << ',' << fmt_double(m.n_circuit) << ','
        << m.n_groups << ',' << result.seed << ','
        << (m.wall_ms ? fmt_double(*m.wall_ms) : std::string()) << '\n';
  }
}

}  // namespace qmeas
