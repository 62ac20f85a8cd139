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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qmeas/grouping.hpp"
#include "qmeas/hamiltonian.hpp"
#include "qmeas/pauli.hpp"
#include "qmeas/random.hpp"

namespace qmeas {

inline constexpr std::size_t kMaxSimQubits = 14;

using Amplitude = std::complex<double>;

/// Pure state on n <= 14 qubits. Basis index bit q is qubit q.
class StateVector {
 public:
  /// Throws std::invalid_argument if the size is not 2^n or the norm is off
  /// by more than 1e-10.
  StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

  static StateVector basis_state(std::size_t n_qubits, std::uint64_t index);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

 private:
  std::size_t n_qubits_;
  std::vector<Amplitude> amps_;
};

/// <psi| P |psi> (real for Hermitian P).
double expectation(const PauliString& p, const StateVector& psi);
/// <psi| H |psi>, identity offset included.
double expectation(const Hamiltonian& h, const StateVector& psi);

struct GroundState {
  double energy = 0.0;  // lowest eigenvalue plus identity offset
  StateVector psi;
};

/// Dense Hermitian eigendecomposition. In a degenerate ground space the
/// returned vector is the normalized projection of the lowest-index
/// computational basis state with non-zero overlap; its first non-zero
/// amplitude is then real and positive.
GroundState ground_state(const Hamiltonian& h);

/// One executed circuit. Outcome m is a bit row: bit q set means qubit q
/// read -1, clear means +1.
struct MeasurementRecord {
  PauliString basis;
  std::size_t group_index = 0;
  std::vector<std::uint64_t> outcomes;

  std::size_t shots() const { return outcomes.size(); }
  int value(std::size_t shot, std::size_t qubit) const {
    return (outcomes[shot] >> qubit) & 1u ? -1 : 1;
  }
  friend bool operator==(const MeasurementRecord&,
                         const MeasurementRecord&) = default;
};

/// Outcome distribution of `psi` after rotating every qubit into the basis
/// axis (X: H, Y: S^dagger then H, Z: none). Reusable across draws.
class BasisSampler {
 public:
  /// Throws std::invalid_argument if `basis` is not full support.
  BasisSampler(const StateVector& psi, const PauliString& basis);

  const std::vector<double>& probabilities() const { return probs_; }
  /// Inverse-CDF draw of one outcome row.
  std::uint64_t draw(Xoshiro256& rng) const;
  MeasurementRecord sample(std::uint64_t shots, Xoshiro256& rng,
                           std::size_t group_index = 0) const;

 private:
  PauliString basis_;
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

MeasurementRecord sample_basis(const StateVector& psi, const PauliString& basis,
                               std::uint64_t shots, Xoshiro256& rng);

/// One record per group with a non-zero shot count, in group order.
std::vector<MeasurementRecord> execute_recipe(
    const StateVector& psi, const GroupSet& groups,
    std::span<const std::uint64_t> shots, Xoshiro256& rng);

/// JSON lines: {"basis": "...", "group_index": k, "outcomes": [[+1,-1,...],...]}
void write_records_jsonl(std::ostream& out,
                         std::span<const MeasurementRecord> records);
std::vector<MeasurementRecord> read_records_jsonl(std::istream& in);

}  // namespace qmeas
