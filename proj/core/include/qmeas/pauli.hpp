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
#include <string>
#include <string_view>
#include <vector>

namespace qmeas {

/// Single-qubit Pauli axis. The numeric value encodes (x bit, z bit):
/// I = 00, X = 01 (x only), Z = 10 (z only), Y = 11.
enum class Axis : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char axis_char(Axis a);

/**
 * An n-qubit tensor product of I/X/Y/Z without phase.
 *
 * Stored as two bitmasks of width n: qubit i carries X if only x_mask bit i
 * is set, Z if only z_mask bit i is set, Y if both are set and I if neither.
 * Character i of the text form is qubit i.
 */
class PauliString {
 public:
  PauliString() = default;

  /// All-identity string on `n_qubits` qubits.
  explicit PauliString(std::size_t n_qubits);

  /// Parses a string over {I, X, Y, Z}. Throws std::invalid_argument on any
  /// other character or an empty string.
  static PauliString from_string(std::string_view text);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t n_words() const { return x_.size(); }

  Axis axis(std::size_t qubit) const;
  void set_axis(std::size_t qubit, Axis a);

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

  /// Low 64 qubits of the support / masks; used by the dense simulator where
  /// n never exceeds 64.
  std::uint64_t x_mask64() const { return x_.empty() ? 0 : x_[0]; }
  std::uint64_t z_mask64() const { return z_.empty() ? 0 : z_[0]; }
  std::uint64_t support_mask64() const { return x_mask64() | z_mask64(); }

  bool is_identity() const;
  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  std::size_t count_y() const;

  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

  std::size_t hash() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    return p.hash();
  }
};

/// Qubit-wise commutation: at every qubit the axes agree or one is I.
/// Throws std::invalid_argument on mismatched qubit counts.
bool qwc(const PauliString& p, const PauliString& q);

/// True iff measuring in `basis` yields a sample of `op`: on every qubit of
/// support(op) the basis carries the same axis.
bool covered_by(const PauliString& op, const PauliString& basis);

}  // namespace qmeas
