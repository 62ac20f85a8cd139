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

#include "qmeas/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qmeas {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

void require_same_width(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli strings act on different qubit counts: " +
                                std::to_string(a.n_qubits()) + " vs " +
                                std::to_string(b.n_qubits()));
  }
}

}  // namespace

char axis_char(Axis a) {
  switch (a) {
    case Axis::I:
      return 'I';
    case Axis::X:
      return 'X';
    case Axis::Y:
      return 'Y';
    case Axis::Z:
      return 'Z';
  }
  return '?';
}

PauliString::PauliString(std::size_t n_qubits)
    : n_qubits_(n_qubits), x_(words_for(n_qubits), 0), z_(words_for(n_qubits), 0) {}

PauliString PauliString::from_string(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty Pauli string");
  PauliString p(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I':
        break;
      case 'X':
        p.set_axis(i, Axis::X);
        break;
      case 'Y':
        p.set_axis(i, Axis::Y);
        break;
      case 'Z':
        p.set_axis(i, Axis::Z);
        break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli axis '") +
                                    text[i] + "' at position " +
                                    std::to_string(i));
    }
  }
  return p;
}

Axis PauliString::axis(std::size_t qubit) const {
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  const std::size_t w = qubit / kWordBits;
  const unsigned xb = (x_[w] & bit) ? 1u : 0u;
  const unsigned zb = (z_[w] & bit) ? 2u : 0u;
  return static_cast<Axis>(xb | zb);
}

void PauliString::set_axis(std::size_t qubit, Axis a) {
  if (qubit >= n_qubits_) throw std::out_of_range("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  const std::size_t w = qubit / kWordBits;
  const auto v = static_cast<unsigned>(a);
  x_[w] = (v & 1u) ? (x_[w] | bit) : (x_[w] & ~bit);
  z_[w] = (v & 2u) ? (z_[w] | bit) : (z_[w] & ~bit);
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) return false;
  }
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t n = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) n += std::popcount(x_[w] | z_[w]);
  return n;
}

std::size_t PauliString::count_y() const {
  std::size_t n = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) n += std::popcount(x_[w] & z_[w]);
  return n;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_qubits_; ++i) {
    if (axis(i) != Axis::I) out.push_back(i);
  }
  return out;
}

std::string PauliString::to_string() const {
  std::string s(n_qubits_, 'I');
  for (std::size_t i = 0; i < n_qubits_; ++i) s[i] = axis_char(axis(i));
  return s;
}

std::size_t PauliString::hash() const {
  std::size_t h = n_qubits_;
  auto mix = [&h](std::uint64_t v) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (std::size_t w = 0; w < x_.size(); ++w) {
    mix(x_[w]);
    mix(z_[w]);
  }
  return h;
}

bool qwc(const PauliString& p, const PauliString& q) {
  require_same_width(p, q);
  const auto& px = p.x_words();
  const auto& pz = p.z_words();
  const auto& qx = q.x_words();
  const auto& qz = q.z_words();
  for (std::size_t w = 0; w < px.size(); ++w) {
    const std::uint64_t both = (px[w] | pz[w]) & (qx[w] | qz[w]);
    const std::uint64_t differ = (px[w] ^ qx[w]) | (pz[w] ^ qz[w]);
    if (both & differ) return false;
  }
  return true;
}

bool covered_by(const PauliString& op, const PauliString& basis) {
  require_same_width(op, basis);
  const auto& ox = op.x_words();
  const auto& oz = op.z_words();
  const auto& bx = basis.x_words();
  const auto& bz = basis.z_words();
  for (std::size_t w = 0; w < ox.size(); ++w) {
    const std::uint64_t support = ox[w] | oz[w];
    const std::uint64_t differ = (ox[w] ^ bx[w]) | (oz[w] ^ bz[w]);
    if (support & differ) return false;
  }
  return true;
}

}  // namespace qmeas
