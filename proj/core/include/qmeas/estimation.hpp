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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmeas/grouping.hpp"
#include "qmeas/hamiltonian.hpp"
#include "qmeas/simulator.hpp"

namespace qmeas {

/// Bit-packed sequence of +-1 samples (a set bit is -1).
class SignSeries {
 public:
  void push_back(int sign);
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u ? -1 : 1;
  }
  /// Sum of samples in [begin, end).
  long long sum(std::size_t begin, std::size_t end) const;
  double mean() const;
  /// Population variance 1 - mean^2; 0 when empty.
  double variance() const;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Per-term pooled samples, in record order then shot order.
struct OperatorSamples {
  std::vector<SignSeries> series;

  std::size_t size() const { return series.size(); }
  std::size_t count(std::size_t term) const { return series.at(term).size(); }
};

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Signs prod_{j in supp(O_l)} q_j for every member l of each record's
/// group. Throws IntegrityError when a record's basis does not cover a
/// member of its group or names an unknown group.
OperatorSamples extract_signs(std::span<const MeasurementRecord> records,
                              const GroupSet& groups, const Hamiltonian& h);

/// Hit-conditioned extraction without groups: a record feeds every term its
/// basis covers. Used for randomized-basis measurements.
OperatorSamples extract_signs_by_coverage(
    std::span<const MeasurementRecord> records, const Hamiltonian& h);

/// Arithmetic mean per term; 0 for terms without samples.
std::vector<double> mean_estimate(const OperatorSamples& samples);

enum class MomRule {
  kSqrtM,           // K = ceil(sqrt(M_l))
  kVarianceScaled,  // K = round(M_l * sqrt(var / eps_l^2))
  kVarianceRatio,   // K = round(M_l * eps_l^2 / var)
  kFixed,           // K = fixed_k
};

std::string to_string(MomRule rule);
/// "sqrt-m", "variance-scaled", "variance-ratio", "fixed".
MomRule parse_mom_rule(const std::string& name);

struct MomConfig {
  MomRule rule = MomRule::kVarianceRatio;
  std::size_t fixed_k = 1;
  double term_epsilon = 1.0;  // eps_l = eps / sum|a|
};

/// Block count for one series, clamped to [1, M_l]; 0 for an empty series.
std::size_t mom_block_count(const SignSeries& s, const MomConfig& cfg);

/// Median of K equal-block means of floor(M/K) samples each; trailing
/// samples are dropped. Even K averages the two middle block means.
double median_of_means(const SignSeries& s, std::size_t blocks);
std::vector<double> median_of_means(const OperatorSamples& samples,
                                    const MomConfig& cfg);

enum class EstimatorKind { kMean, kMedianOfMeans };

std::string to_string(EstimatorKind kind);
/// "mean" or "mom".
EstimatorKind parse_estimator_kind(const std::string& name);

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::kMedianOfMeans;
  MomRule mom_rule = MomRule::kVarianceRatio;
  std::size_t fixed_k = 1;
  /// Energy-level accuracy; eps_l = epsilon / sum|a|. Only MoM uses it.
  double epsilon = 1.0;
};

struct TermEstimate {
  double estimate = 0.0;
  std::size_t samples = 0;  // M_l, also the hit count
  double variance = 0.0;
  std::size_t blocks = 0;  // MoM block count, 1 for the plain mean
  bool measured = false;
};

struct EnergyEstimate {
  double value = 0.0;  // identity offset + sum a_l * estimate_l
  EstimatorKind kind = EstimatorKind::kMean;
  std::vector<TermEstimate> terms;
  std::vector<std::size_t> unmeasured;
};

EnergyEstimate estimate_energy(const OperatorSamples& samples,
                               const Hamiltonian& h, const EstimatorConfig& cfg);
EnergyEstimate estimate_energy(std::span<const MeasurementRecord> records,
                               const GroupSet& groups, const Hamiltonian& h,
                               const EstimatorConfig& cfg);

/// Outcomes contributing a sign to each term (equals M_l).
std::vector<std::size_t> hit_rate(std::span<const MeasurementRecord> records,
                                  const GroupSet& groups, const Hamiltonian& h);

}  // namespace qmeas
