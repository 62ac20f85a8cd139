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

// qmeas: grouping, shot allocation and simulated energy estimation for
// Pauli-sum Hamiltonians.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or input parse error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmeas/allocation.hpp"
#include "qmeas/bench.hpp"
#include "qmeas/estimation.hpp"
#include "qmeas/grouping.hpp"
#include "qmeas/hamiltonian.hpp"
#include "qmeas/json_io.hpp"
#include "qmeas/simulator.hpp"

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

// Bad input the user can fix: maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string hamiltonian;
  std::uint64_t shots = 1000;
  std::optional<std::uint64_t> seed;
  std::string bound = "per-op";
  std::optional<double> epsilon;
  double m0 = 1.0;
  std::vector<std::string> methods;
  std::size_t repeats = 10;
  std::string out;
  std::string format = "json";
  std::string estimator = "mom";
  std::string mom_rule = "variance-ratio";
  std::size_t mom_k = 1;
  std::string overlap = "inverse";
  std::string records;
  std::size_t rounds = 2;
  std::size_t cg_rounds = 10;
  std::uint64_t cg_budget = 1000;
  std::size_t threads = 0;
  bool timing = false;
  std::size_t toy_n = 3;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + o.out);
  f << text;
}

qmeas::Hamiltonian load(const std::string& path) {
  try {
    return qmeas::load_hamiltonian(path);
  } catch (const qmeas::ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

qmeas::BoundKind bound_kind(const Options& o) {
  try {
    return qmeas::parse_bound_kind(o.bound);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

qmeas::EstimatorConfig estimator_config(const Options& o) {
  qmeas::EstimatorConfig cfg;
  try {
    cfg.kind = qmeas::parse_estimator_kind(o.estimator);
    cfg.mom_rule = qmeas::parse_mom_rule(o.mom_rule);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.fixed_k = o.mom_k;
  return cfg;
}

qmeas::ExperimentSpec experiment_spec(const Options& o, const std::string& label) {
  qmeas::ExperimentSpec spec;
  spec.label = label;
  spec.budget = o.shots;
  spec.repeats = o.repeats;
  spec.seed = *o.seed;
  spec.bound = bound_kind(o);
  spec.epsilon = o.epsilon;
  spec.m0 = o.m0;
  spec.estimator = estimator_config(o);
  spec.adaptive.rounds = o.rounds;
  spec.coarse.rounds = o.cg_rounds;
  spec.coarse.test_budget = o.cg_budget;
  spec.threads = o.threads;
  spec.timing = o.timing;
  spec.methods.clear();
  try {
    for (const auto& m : o.methods) spec.methods.push_back(qmeas::parse_method(m));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

int cmd_group(const Options& o) {
  const auto h = load(o.hamiltonian);
  const auto groups = qmeas::maxmin_grouping(h);
  if (o.format == "json") {
    emit(o, qmeas::to_json(groups, h).dump(2) + "\n");
    return 0;
  }
  std::ostringstream s;
  s << "groups " << groups.size() << "\n";
  for (std::size_t a = 0; a < groups.size(); ++a) {
    const auto& g = groups.group(a);
    s << a << ' ' << g.basis.to_string() << " size=" << g.members.size()
      << " core=" << g.core.size() << "\n";
  }
  emit(o, s.str());
  return 0;
}

int cmd_allocate(const Options& o) {
  const auto h = load(o.hamiltonian);
  const auto groups = qmeas::maxmin_grouping(h);
  const double eps = o.epsilon.value_or(qmeas::naive_epsilon(h, o.shots, o.m0));
  auto spec = qmeas::make_bound_spec(bound_kind(o), eps, o.shots, groups, h);
  if (spec.kind == qmeas::BoundKind::kHoeffdingPerGroup) {
    static const std::map<std::string, qmeas::OverlapWeighting> kRules = {
        {"inverse", qmeas::OverlapWeighting::kInverseMultiplicity},
        {"group-size", qmeas::OverlapWeighting::kGroupSize},
        {"zero-low", qmeas::OverlapWeighting::kZeroLowWeight}};
    const auto it = kRules.find(o.overlap);
    if (it == kRules.end()) throw UsageError("unknown overlap weighting " + o.overlap);
    spec.overlap_weights = qmeas::make_overlap_weights(groups, h, it->second);
  }
  const auto alloc = qmeas::optimize_weights(spec, groups, h);
  auto j = qmeas::to_json(alloc);
  j["bound"] = qmeas::to_string(spec.kind);
  j["n_groups"] = groups.size();
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_estimate(Options o) {
  const auto h = load(o.hamiltonian);
  if (h.empty()) throw UsageError("Hamiltonian has no terms");
  if (o.methods.size() != 1) throw UsageError("estimate takes exactly one --method");
  o.repeats = 1;
  const auto spec = experiment_spec(o, o.hamiltonian);
  const auto gs = qmeas::ground_state(h);
  const auto groups = qmeas::maxmin_grouping(h);
  const auto method = spec.methods.front();
  const auto plan = qmeas::plan_method(method, h, gs, groups, spec);
  const auto trial = qmeas::run_trial(plan, h, gs, groups, spec,
                                      qmeas::trial_seed(spec, method, 0));

  if (!o.records.empty() && !plan.shots.empty()) {
    // Re-run the recipe from the same seed to dump the raw outcomes.
    qmeas::Xoshiro256 rng(qmeas::trial_seed(spec, method, 0));
    const auto recs = qmeas::execute_recipe(gs.psi, groups, plan.shots, rng);
    std::ofstream f(o.records, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open records file " + o.records);
    qmeas::write_records_jsonl(f, recs);
  }

  nlohmann::json j = qmeas::to_json(trial.estimate, h);
  j["method"] = qmeas::to_string(method);
  j["estimate"] = trial.estimate.value;
  j["exact_energy"] = gs.energy;
  j["abs_error"] = std::abs(trial.estimate.value - gs.energy);
  j["n_circuit"] = trial.n_circuit;
  j["n_groups"] = groups.size();
  j["epsilon"] = plan.epsilon;
  j["shots"] = plan.shots;
  j["seed"] = spec.seed;
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_bench(const Options& o, const std::vector<std::string>& paths) {
  std::ostringstream csv;
  nlohmann::json all = nlohmann::json::array();
  bool header = true;
  for (const auto& path : paths) {
    const auto h = load(path);
    const auto result = qmeas::run_bench(h, experiment_spec(o, path));
    qmeas::write_bench_csv(csv, result, header);
    header = false;
    all.push_back(qmeas::to_json(result));
  }
  emit(o, o.format == "csv" ? csv.str() : all.dump(2) + "\n");
  return 0;
}

int cmd_toy_model(const Options& o) {
  if (o.toy_n < 2 || o.toy_n > 10) throw UsageError("toy model needs 2 <= n <= 10");
  emit(o, qmeas::serialize_hamiltonian(qmeas::toy_model(o.toy_n)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grouped Pauli measurement: grouping, shot allocation, estimation"};
  app.set_config("--config", "", "INI file with option defaults; flags win");
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> bench_paths;

  auto add_ham = [&](CLI::App* c) {
    c->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian file")->required();
  };
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Write output here instead of stdout");
  };
  auto add_bound = [&](CLI::App* c) {
    c->add_option("--shots", o.shots, "Total shot budget M")->check(CLI::PositiveNumber);
    c->add_option("--bound", o.bound, "per-op | per-group | bernstein");
    c->add_option("--epsilon", o.epsilon, "Accuracy; default 2 sum|a| sqrt(m0/M)")
        ->check(CLI::PositiveNumber);
    c->add_option("--m0", o.m0, "Scale of the default epsilon")->check(CLI::PositiveNumber);
  };
  auto add_estimator = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "RNG seed")->required();
    c->add_option("--estimator", o.estimator, "mean | mom");
    c->add_option("--mom-rule", o.mom_rule,
                  "sqrt-m | variance-scaled | variance-ratio | fixed");
    c->add_option("--mom-k", o.mom_k, "Block count for --mom-rule fixed")
        ->check(CLI::PositiveNumber);
    c->add_option("--rounds", o.rounds, "Rounds for rogs_adaptive")
        ->check(CLI::PositiveNumber);
    c->add_option("--cg-rounds", o.cg_rounds, "Candidates for rogs_coarse")
        ->check(CLI::PositiveNumber);
    c->add_option("--cg-budget", o.cg_budget, "Test budget for rogs_coarse")
        ->check(CLI::PositiveNumber);
  };

  auto* group = app.add_subcommand("group", "Max-Min QWC grouping");
  add_ham(group);
  add_out(group);
  group->add_option("--format", o.format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* allocate = app.add_subcommand("allocate", "Optimize shot weights");
  add_ham(allocate);
  add_out(allocate);
  add_bound(allocate);
  allocate->add_option("--overlap", o.overlap,
                       "Per-group overlap weights: inverse | group-size | zero-low");

  auto* estimate = app.add_subcommand("estimate", "Simulate and estimate the energy");
  add_ham(estimate);
  add_out(estimate);
  add_bound(estimate);
  add_estimator(estimate);
  estimate->add_option("--method", o.methods, "Allocation method (default rogs_naive)");
  estimate->add_option("--records", o.records, "Write raw outcomes as JSON lines");

  auto* bench = app.add_subcommand("bench", "Compare methods over seeded repeats");
  bench->add_option("--hamiltonian", bench_paths, "Hamiltonian file(s)")->required();
  add_out(bench);
  add_bound(bench);
  add_estimator(bench);
  bench->add_option("--method", o.methods,
                    "Methods to run (default rogs_naive even_distribution)");
  bench->add_option("--repeats", o.repeats, "Repeats per method")
      ->check(CLI::PositiveNumber);
  bench->add_option("--format", o.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  bench->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  bench->add_flag("--timing", o.timing, "Fill wall_ms (output no longer reproducible)");

  auto* toy = app.add_subcommand("toy-model", "Emit the two-group toy Hamiltonian");
  toy->add_option("--n", o.toy_n, "Qubits (2..10)")->required();
  add_out(toy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*group) return cmd_group(o);
    if (*allocate) return cmd_allocate(o);
    if (*estimate) {
      if (o.methods.empty()) o.methods = {"rogs_naive"};
      return cmd_estimate(o);
    }
    if (*bench) {
      if (o.methods.empty()) o.methods = {"rogs_naive", "even_distribution"};
      return cmd_bench(o, bench_paths);
    }
    if (*toy) return cmd_toy_model(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kUsageError;
}
