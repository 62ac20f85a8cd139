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

#include "qmeas/estimation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qmeas {

void SignSeries::push_back(int sign) {
  if (size_ % 64 == 0) words_.push_back(0);
  if (sign < 0) words_.back() |= std::uint64_t{1} << (size_ % 64);
  ++size_;
}

long long SignSeries::sum(std::size_t begin, std::size_t end) const {
  if (begin > end || end > size_) throw std::out_of_range("SignSeries::sum");
  long long negatives = 0;
  std::size_t i = begin;
  while (i < end) {
    const std::size_t w = i / 64;
    const std::size_t lo = i % 64;
    const std::size_t hi = std::min<std::size_t>(64, lo + (end - i));
    std::uint64_t mask = hi == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << hi) - 1;
    mask &= ~((std::uint64_t{1} << lo) - 1);
    negatives += std::popcount(words_[w] & mask);
    i += hi - lo;
  }
  const auto n = static_cast<long long>(end - begin);
  return n - 2 * negatives;
}

double SignSeries::mean() const {
  if (size_ == 0) return 0.0;
  return static_cast<double>(sum(0, size_)) / static_cast<double>(size_);
}

double SignSeries::variance() const {
  if (size_ == 0) return 0.0;
  const double m = mean();
  return std::max(0.0, 1.0 - m * m);
}

namespace {

int term_sign(std::uint64_t outcome, std::uint64_t support) {
  return (std::popcount(outcome & support) & 1) ? -1 : 1;
}

void check_record_width(const MeasurementRecord& rec, const Hamiltonian& h) {
  if (rec.basis.n_qubits() != h.n_qubits()) {
    throw IntegrityError("record basis " + rec.basis.to_string() +
                         " does not match the Hamiltonian width");
  }
}

}  // namespace

OperatorSamples extract_signs(std::span<const MeasurementRecord> records,
                              const GroupSet& groups, const Hamiltonian& h) {
  OperatorSamples out;
  out.series.resize(h.size());
  for (const auto& rec : records) {
    check_record_width(rec, h);
    if (rec.group_index >= groups.size()) {
      throw IntegrityError("record names unknown group " +
                           std::to_string(rec.group_index));
    }
    for (std::size_t l : groups.group(rec.group_index).members) {
      const PauliString& op = h.term(l).op;
      if (!covered_by(op, rec.basis)) {
        throw IntegrityError("basis " + rec.basis.to_string() +
                             " does not cover group member " + op.to_string());
      }
      const std::uint64_t support = op.support_mask64();
      auto& s = out.series[l];
      for (std::uint64_t o : rec.outcomes) s.push_back(term_sign(o, support));
    }
  }
  return out;
}

OperatorSamples extract_signs_by_coverage(
    std::span<const MeasurementRecord> records, const Hamiltonian& h) {
  OperatorSamples out;
  out.series.resize(h.size());
  for (const auto& rec : records) {
    check_record_width(rec, h);
    for (std::size_t l = 0; l < h.size(); ++l) {
      const PauliString& op = h.term(l).op;
      if (!covered_by(op, rec.basis)) continue;
      const std::uint64_t support = op.support_mask64();
      for (std::uint64_t o : rec.outcomes) out.series[l].push_back(term_sign(o, support));
    }
  }
  return out;
}

std::vector<double> mean_estimate(const OperatorSamples& samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples.series) out.push_back(s.mean());
  return out;
}

std::string to_string(MomRule rule) {
  switch (rule) {
    case MomRule::kSqrtM:
      return "sqrt-m";
    case MomRule::kVarianceScaled:
      return "variance-scaled";
    case MomRule::kVarianceRatio:
      return "variance-ratio";
    case MomRule::kFixed:
      return "fixed";
  }
  return "?";
}

MomRule parse_mom_rule(const std::string& name) {
  if (name == "sqrt-m") return MomRule::kSqrtM;
  if (name == "variance-scaled") return MomRule::kVarianceScaled;
  if (name == "variance-ratio") return MomRule::kVarianceRatio;
  if (name == "fixed") return MomRule::kFixed;
  throw std::invalid_argument("unknown median-of-means rule: " + name);
}

std::size_t mom_block_count(const SignSeries& s, const MomConfig& cfg) {
  const std::size_t m = s.size();
  if (m == 0) return 0;
  const double md = static_cast<double>(m);
  double k = 1.0;
  switch (cfg.rule) {
    case MomRule::kSqrtM:
      k = std::ceil(std::sqrt(md));
      break;
    case MomRule::kVarianceScaled:
      k = std::round(md * std::sqrt(s.variance()) / cfg.term_epsilon);
      break;
    case MomRule::kVarianceRatio: {
      // Zero variance: every block mean is equal, any K gives the same value.
      const double var = s.variance();
      k = var > 0.0 ? std::round(md * cfg.term_epsilon * cfg.term_epsilon / var) : md;
      break;
    }
    case MomRule::kFixed:
      k = static_cast<double>(cfg.fixed_k);
      break;
  }
  if (!(k >= 1.0)) k = 1.0;  // also catches NaN
  if (k > md) k = md;
  return static_cast<std::size_t>(k);
}

double median_of_means(const SignSeries& s, std::size_t blocks) {
  const std::size_t m = s.size();
  if (m == 0) return 0.0;
  const std::size_t k = std::clamp<std::size_t>(blocks, 1, m);
  const std::size_t len = m / k;
  std::vector<double> means(k);
  for (std::size_t b = 0; b < k; ++b) {
    means[b] = static_cast<double>(s.sum(b * len, (b + 1) * len)) /
               static_cast<double>(len);
  }
  const std::size_t mid = k / 2;
  std::nth_element(means.begin(), means.begin() + mid, means.end());
  const double upper = means[mid];
  if (k % 2 == 1) return upper;
  const double lower = *std::max_element(means.begin(), means.begin() + mid);
  return 0.5 * (lower + upper);
}

std::vector<double> median_of_means(const OperatorSamples& samples,
                                    const MomConfig& cfg) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples.series) {
    out.push_back(median_of_means(s, mom_block_count(s, cfg)));
  }
  return out;
}

std::string to_string(EstimatorKind kind) {
  return kind == EstimatorKind::kMean ? "mean" : "mom";
}

EstimatorKind parse_estimator_kind(const std::string& name) {
  if (name == "mean") return EstimatorKind::kMean;
  if (name == "mom") return EstimatorKind::kMedianOfMeans;
  throw std::invalid_argument("unknown estimator: " + name);
}

EnergyEstimate estimate_energy(const OperatorSamples& samples,
                               const Hamiltonian& h, const EstimatorConfig& cfg) {
  if (samples.size() != h.size()) {
    throw std::invalid_argument("sample table does not match the Hamiltonian");
  }
  const double abs_sum = h.abs_coeff_sum();
  MomConfig mom{cfg.mom_rule, cfg.fixed_k,
                abs_sum > 0.0 ? cfg.epsilon / abs_sum : cfg.epsilon};

  EnergyEstimate est;
  est.kind = cfg.kind;
  est.terms.resize(h.size());
  double value = h.identity_offset();
  for (std::size_t l = 0; l < h.size(); ++l) {
    const SignSeries& s = samples.series[l];
    TermEstimate& t = est.terms[l];
    t.samples = s.size();
    t.measured = !s.empty();
    if (!t.measured) {
      est.unmeasured.push_back(l);
      continue;
    }
    t.variance = s.variance();
    if (cfg.kind == EstimatorKind::kMean) {
      t.blocks = 1;
      t.estimate = s.mean();
    } else {
      t.blocks = mom_block_count(s, mom);
      t.estimate = median_of_means(s, t.blocks);
    }
    value += h.term(l).coefficient * t.estimate;
  }
  est.value = value;
  return est;
}

EnergyEstimate estimate_energy(std::span<const MeasurementRecord> records,
                               const GroupSet& groups, const Hamiltonian& h,
                               const EstimatorConfig& cfg) {
  return estimate_energy(extract_signs(records, groups, h), h, cfg);
}

std::vector<std::size_t> hit_rate(std::span<const MeasurementRecord> records,
                                  const GroupSet& groups, const Hamiltonian& h) {
  std::vector<std::size_t> hits(h.size(), 0);
  for (const auto& rec : records) {
    if (rec.group_index >= groups.size()) {
      throw IntegrityError("record names unknown group " +
                           std::to_string(rec.group_index));
    }
    for (std::size_t l : groups.group(rec.group_index).members) {
      hits[l] += rec.shots();
    }
  }
  return hits;
}

}  // namespace qmeas
