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
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmeas/pauli.hpp"

namespace qmeas {

struct PauliTerm {
  double coefficient = 0.0;
  PauliString op;
};

/**
 * Weighted sum of Pauli strings, H = c_I * I + sum_l a_l O_l.
 *
 * The identity coefficient is held apart as `identity_offset()`; `terms()`
 * never contains the all-identity string and never contains duplicates.
 * Term order is the order of first appearance in the source.
 */
class Hamiltonian {
 public:
  Hamiltonian() = default;

  /// Merges duplicates by coefficient addition, drops exact zeros and moves
  /// identity terms into the offset. Throws std::invalid_argument when the
  /// operators disagree on qubit count.
  Hamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms,
              double identity_offset = 0.0);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const PauliTerm& term(std::size_t i) const { return terms_.at(i); }
  double identity_offset() const { return identity_offset_; }

  /// Sum of |a_l| over non-identity terms.
  double abs_coeff_sum() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  double identity_offset_ = 0.0;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    kEmptyInput,
    kMalformedLine,
    kMalformedCoefficient,
    kInvalidAxis,
    kInconsistentLength,
  };

  ParseError(Kind kind, std::size_t line, const std::string& detail);

  Kind kind() const { return kind_; }
  /// 1-based line number; 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Reads `<coefficient> <axis string>` lines; `#` starts a comment.
Hamiltonian parse_hamiltonian(std::istream& in);
Hamiltonian parse_hamiltonian(std::string_view text);
Hamiltonian load_hamiltonian(const std::string& path);

/// Canonical text form: `%.17g` coefficients, one term per line in term
/// order, identity line last (always present).
std::string serialize_hamiltonian(const Hamiltonian& h);

/// Z^{(x)n} + 4^{-n} * sum over all {I,X}^n strings. The all-I member of the
/// sum becomes the identity offset.
Hamiltonian toy_model(std::size_t n_qubits);

/// Seeded random Hamiltonian shaped like a second-quantized molecular one: a
/// share of diagonal (Z-only) terms of weight 1..4 and off-diagonal terms of
/// weight 2..4 with an even number of Y factors. Coefficients are
/// log-uniform in [1e-3, 1] with random sign.
Hamiltonian random_structured_hamiltonian(std::size_t n_qubits,
                                          std::size_t n_terms,
                                          std::uint64_t seed);

}  // namespace qmeas
