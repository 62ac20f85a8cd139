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

#include "qmeas/simulator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qmeas {

namespace {

// i^k for k mod 4.
Amplitude i_pow(std::size_t k) {
  switch (k % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

void require_simulable(std::size_t n) {
  if (n == 0 || n > kMaxSimQubits) {
    throw std::invalid_argument("dense simulation supports 1.." +
                                std::to_string(kMaxSimQubits) + " qubits, got " +
                                std::to_string(n));
  }
}

// P|b> = i^{#Y} (-1)^{popcount(b & z)} |b ^ x>.
struct PauliAction {
  std::uint64_t x;
  std::uint64_t z;
  Amplitude phase;

  explicit PauliAction(const PauliString& p)
      : x(p.x_mask64()), z(p.z_mask64()), phase(i_pow(p.count_y())) {}

  Amplitude sign(std::uint64_t b) const {
    return (std::popcount(b & z) & 1) ? -phase : phase;
  }
};

}  // namespace

StateVector::StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  require_simulable(n_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("state vector size is not 2^n");
  }
  double norm2 = 0.0;
  for (const auto& a : amps_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw std::invalid_argument("state vector is not normalized (|psi|^2 = " +
                                std::to_string(norm2) + ")");
  }
}

StateVector StateVector::basis_state(std::size_t n_qubits, std::uint64_t index) {
  require_simulable(n_qubits);
  std::vector<Amplitude> amps(std::size_t{1} << n_qubits, 0.0);
  amps.at(index) = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

double expectation(const PauliString& p, const StateVector& psi) {
  if (p.n_qubits() != psi.n_qubits()) {
    throw std::invalid_argument("operator and state qubit counts differ");
  }
  const PauliAction act(p);
  Amplitude acc = 0.0;
  for (std::uint64_t b = 0; b < psi.dim(); ++b) {
    acc += std::conj(psi[b ^ act.x]) * act.sign(b) * psi[b];
  }
  return acc.real();
}

double expectation(const Hamiltonian& h, const StateVector& psi) {
  double e = h.identity_offset();
  for (const auto& t : h.terms()) e += t.coefficient * expectation(t.op, psi);
  return e;
}

GroundState ground_state(const Hamiltonian& h) {
  require_simulable(h.n_qubits());
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    const PauliAction act(t.op);
    for (std::uint64_t b = 0; b < dim; ++b) {
      mat(b ^ act.x, b) += t.coefficient * act.sign(b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver failed");
  }
  const auto& evals = solver.eigenvalues();
  const auto& evecs = solver.eigenvectors();
  const double lowest = evals(0);
  const double tol = 1e-9 * std::max(1.0, std::abs(lowest));
  Eigen::Index k = 1;
  while (k < evals.size() && evals(k) - lowest <= tol) ++k;
  const Eigen::MatrixXcd ground = evecs.leftCols(k);

  // Projection of the first computational basis state that overlaps the
  // ground space.
  for (std::size_t b = 0; b < dim; ++b) {
    const Eigen::VectorXcd overlap = ground.row(b).adjoint();
    if (overlap.squaredNorm() <= 1e-12) continue;
    Eigen::VectorXcd v = ground * overlap;
    v /= v.norm();
    Amplitude phase = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      if (std::abs(v(j)) > 1e-12) {
        phase = std::abs(v(j)) / v(j);
        break;
      }
    }
    std::vector<Amplitude> amps(dim);
    for (std::size_t j = 0; j < dim; ++j) amps[j] = v(j) * phase;
    return {lowest + h.identity_offset(), StateVector(h.n_qubits(), std::move(amps))};
  }
  throw std::runtime_error("ground space has no computational-basis overlap");
}

BasisSampler::BasisSampler(const StateVector& psi, const PauliString& basis)
    : basis_(basis) {
  const std::size_t n = psi.n_qubits();
  if (basis.n_qubits() != n) {
    throw std::invalid_argument("basis and state qubit counts differ");
  }
  if (basis.weight() != n) {
    throw std::invalid_argument("measurement basis must be full support: " +
                                basis.to_string());
  }
  std::vector<Amplitude> v = psi.amplitudes();
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude minus_i(0.0, -1.0);
  for (std::size_t q = 0; q < n; ++q) {
    const Axis a = basis.axis(q);
    if (a == Axis::Z) continue;
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t b = 0; b < v.size(); ++b) {
      if (b & bit) continue;
      Amplitude a0 = v[b];
      Amplitude a1 = v[b | bit];
      if (a == Axis::Y) a1 *= minus_i;  // S^dagger
      v[b] = r * (a0 + a1);
      v[b | bit] = r * (a0 - a1);
    }
  }
  probs_.resize(v.size());
  cdf_.resize(v.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) {
    probs_[b] = std::norm(v[b]);
    acc += probs_[b];
    cdf_[b] = acc;
  }
}

std::uint64_t BasisSampler::draw(Xoshiro256& rng) const {
  const double u = rng.uniform() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  // Skip zero-probability outcomes that share the cumulative value.
  auto idx = static_cast<std::uint64_t>(it - cdf_.begin());
  while (probs_[idx] == 0.0 && idx + 1 < probs_.size()) ++idx;
  return idx;
}

MeasurementRecord BasisSampler::sample(std::uint64_t shots, Xoshiro256& rng,
                                       std::size_t group_index) const {
  MeasurementRecord rec;
  rec.basis = basis_;
  rec.group_index = group_index;
  rec.outcomes.reserve(shots);
  for (std::uint64_t s = 0; s < shots; ++s) rec.outcomes.push_back(draw(rng));
  return rec;
}

MeasurementRecord sample_basis(const StateVector& psi, const PauliString& basis,
                               std::uint64_t shots, Xoshiro256& rng) {
  return BasisSampler(psi, basis).sample(shots, rng);
}

std::vector<MeasurementRecord> execute_recipe(const StateVector& psi,
                                              const GroupSet& groups,
                                              std::span<const std::uint64_t> shots,
                                              Xoshiro256& rng) {
  if (shots.size() != groups.size()) {
    throw std::invalid_argument("shot vector does not match the group count");
  }
  std::vector<MeasurementRecord> records;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    if (shots[a] == 0) continue;
    records.push_back(
        BasisSampler(psi, groups.group(a).basis).sample(shots[a], rng, a));
  }
  return records;
}

void write_records_jsonl(std::ostream& out,
                         std::span<const MeasurementRecord> records) {
  for (const auto& rec : records) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t m = 0; m < rec.shots(); ++m) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t q = 0; q < rec.basis.n_qubits(); ++q) {
        row.push_back(rec.value(m, q));
      }
      rows.push_back(std::move(row));
    }
    nlohmann::json line = {{"basis", rec.basis.to_string()},
                           {"group_index", rec.group_index},
                           {"outcomes", std::move(rows)}};
    out << line.dump() << '\n';
  }
}

std::vector<MeasurementRecord> read_records_jsonl(std::istream& in) {
  std::vector<MeasurementRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line);
    MeasurementRecord rec;
    rec.basis = PauliString::from_string(j.at("basis").get<std::string>());
    rec.group_index = j.at("group_index").get<std::size_t>();
    for (const auto& row : j.at("outcomes")) {
      if (row.size() != rec.basis.n_qubits()) {
        throw std::invalid_argument("outcome row width does not match basis");
      }
      std::uint64_t bits = 0;
      for (std::size_t q = 0; q < row.size(); ++q) {
        const int v = row[q].get<int>();
        if (v != 1 && v != -1) throw std::invalid_argument("outcome must be +-1");
        if (v == -1) bits |= std::uint64_t{1} << q;
      }
      rec.outcomes.push_back(bits);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace qmeas
