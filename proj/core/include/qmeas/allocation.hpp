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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmeas/grouping.hpp"
#include "qmeas/hamiltonian.hpp"

namespace qmeas {

enum class BoundKind {
  kHoeffdingPerOperator,  // union bound over terms
  kHoeffdingPerGroup,     // union bound over groups with overlap weights
  kBernstein,             // per-term, variance aware
};

std::string to_string(BoundKind kind);
/// Accepts "per-op", "per-group", "bernstein". Throws std::invalid_argument.
BoundKind parse_bound_kind(const std::string& name);

/// How a term's unit weight is split over the groups that contain it.
enum class OverlapWeighting {
  kInverseMultiplicity,  // 1 / (number of groups containing the term)
  kGroupSize,            // proportional to |C_alpha|
  kZeroLowWeight,        // inverse multiplicity over groups above a cutoff
};

/// Dense term-by-group matrix w^o. Entries outside a term's groups are 0.
struct OverlapWeights {
  std::size_t n_terms = 0;
  std::size_t n_groups = 0;
  std::vector<double> values;  // row-major [term][group]

  double at(std::size_t term, std::size_t group) const {
    return values[term * n_groups + group];
  }
};

/// `low_weight_fraction` only applies to kZeroLowWeight: groups whose
/// coefficient mass sum |a_l| is below that fraction of the largest group's
/// mass get zero weight; a term left with no eligible group falls back to
/// inverse multiplicity.
OverlapWeights make_overlap_weights(const GroupSet& groups, const Hamiltonian& h,
                                    OverlapWeighting rule,
                                    double low_weight_fraction = 0.1);

struct OperatorStats {
  double variance = 1.0;  // Var of a single +-1 sample
  double max_abs = 1.0;   // |empirical mean|, clipped to [0, 1]
};

/// Scale of the linear term in the Bernstein denominator.
enum class BernsteinScale {
  kPerTerm,  // each term uses its own max_abs
  kGlobal,   // every term uses the largest max_abs
};

struct BoundSpec {
  BoundKind kind = BoundKind::kHoeffdingPerOperator;
  double epsilon = 1.0;
  std::uint64_t budget = 1;
  std::optional<OverlapWeights> overlap_weights;         // per-group kind
  std::optional<std::vector<OperatorStats>> operator_stats;  // bernstein kind
  BernsteinScale bernstein_scale = BernsteinScale::kPerTerm;
};

/**
 * A confidence bound reduced to its exponents:
 *   delta(w) = 2 * sum_j exp(-sum_alpha B[j][alpha] * w_alpha).
 * Rows are terms (per-operator and Bernstein kinds) or groups (per-group
 * kind). Rows whose exponent is identically +inf are dropped.
 */
struct BoundModel {
  std::size_t n_groups = 0;
  struct Entry {
    std::size_t group;
    double rate;
  };
  std::vector<std::vector<Entry>> rows;
};

/// Spec of `kind` with its default data: inverse-multiplicity overlap weights
/// for the per-group kind, worst-case statistics {1, 1} for Bernstein.
BoundSpec make_bound_spec(BoundKind kind, double epsilon, std::uint64_t budget,
                          const GroupSet& groups, const Hamiltonian& h);

/// Throws std::invalid_argument when the spec is inconsistent with `groups`.
BoundModel build_bound_model(const BoundSpec& spec, const GroupSet& groups,
                             const Hamiltonian& h);

double conf_bound(const BoundModel& model, std::span<const double> w);
/// log(delta); finite even when delta underflows.
double log_conf_bound(const BoundModel& model, std::span<const double> w);

/// delta for simplex weights `w`. Throws std::invalid_argument when `w` is
/// off the simplex by more than 1e-9 or the spec lacks required data.
double conf_bound(const BoundSpec& spec, const GroupSet& groups,
                  const Hamiltonian& h, std::span<const double> w);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

struct SolverOptions {
  double stationarity_tol = 1e-8;
  double relative_decrease_tol = 1e-12;
  std::size_t decrease_window = 50;
  std::size_t max_iters = 100000;
};

struct Allocation {
  std::vector<double> weights;
  std::vector<std::uint64_t> shots;
  double epsilon = 0.0;
  std::uint64_t budget = 0;
  double delta = 0.0;  // bound at `weights`, not clamped to 1
  std::size_t support_size = 0;
  std::size_t iterations = 0;
  double stationarity = 0.0;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, Allocation best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const Allocation& best() const { return best_; }

 private:
  Allocation best_;
};

/// Minimizes log(delta) over the simplex by projected gradient with
/// Barzilai-Borwein trial steps and Armijo backtracking, starting from
/// uniform weights. Throws SolverError after max_iters.
Allocation optimize_weights(const BoundSpec& spec, const GroupSet& groups,
                            const Hamiltonian& h, const SolverOptions& opts = {});

/// floor(w * M) per group, then one extra shot to each of the R groups with
/// the largest fractional parts (ties to the lower index), R = M - sum.
std::vector<std::uint64_t> weights_to_shots(std::span<const double> w,
                                            std::uint64_t budget);

/// 2 * sum|a| * sqrt(m0 / M).
double naive_epsilon(const Hamiltonian& h, std::uint64_t budget, double m0 = 1.0);

std::size_t support_size(std::span<const std::uint64_t> shots);
/// Shannon entropy (nats) of a weight vector.
double weight_entropy(std::span<const double> w);

}  // namespace qmeas
