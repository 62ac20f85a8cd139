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

#include "qmeas/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "qmeas/random.hpp"

namespace qmeas {

Hamiltonian::Hamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms,
                         double identity_offset)
    : n_qubits_(n_qubits), identity_offset_(identity_offset) {
  std::unordered_map<PauliString, std::size_t, PauliStringHash> slot;
  std::vector<PauliTerm> merged;
  for (auto& t : terms) {
    if (t.op.n_qubits() != n_qubits) {
      throw std::invalid_argument("term " + t.op.to_string() + " acts on " +
                                  std::to_string(t.op.n_qubits()) +
                                  " qubits, expected " +
                                  std::to_string(n_qubits));
    }
    if (t.op.is_identity()) {
      identity_offset_ += t.coefficient;
      continue;
    }
    auto [it, inserted] = slot.try_emplace(t.op, merged.size());
    if (inserted) {
      merged.push_back(std::move(t));
    } else {
      merged[it->second].coefficient += t.coefficient;
    }
  }
  // Exact-zero pruning only.
  for (auto& t : merged) {
    if (t.coefficient != 0.0) terms_.push_back(std::move(t));
  }
}

double Hamiltonian::abs_coeff_sum() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

namespace {

const char* kind_name(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::kEmptyInput:
      return "empty input";
    case ParseError::Kind::kMalformedLine:
      return "malformed line";
    case ParseError::Kind::kMalformedCoefficient:
      return "malformed coefficient";
    case ParseError::Kind::kInvalidAxis:
      return "invalid Pauli axis";
    case ParseError::Kind::kInconsistentLength:
      return "inconsistent string length";
  }
  return "parse error";
}

std::string format_parse_error(ParseError::Kind kind, std::size_t line,
                               const std::string& detail) {
  std::string msg = kind_name(kind);
  if (line > 0) msg += " at line " + std::to_string(line);
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_real(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(format_parse_error(kind, line, detail)),
      kind_(kind),
      line_(line) {}

Hamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<PauliTerm> terms;
  std::size_t width = 0;
  std::size_t first_line = 0;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto tokens = split_ws(line);
    if (tokens.size() != 2) {
      throw ParseError(ParseError::Kind::kMalformedLine, lineno,
                       "expected '<coefficient> <pauli string>'");
    }
    double coeff = 0.0;
    if (!parse_real(tokens[0], coeff)) {
      throw ParseError(ParseError::Kind::kMalformedCoefficient, lineno,
                       std::string(tokens[0]));
    }
    const std::string_view axes = tokens[1];
    for (char c : axes) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw ParseError(ParseError::Kind::kInvalidAxis, lineno,
                         std::string("'") + c + "' in " + std::string(axes));
      }
    }
    if (width == 0) {
      width = axes.size();
      first_line = lineno;
    } else if (axes.size() != width) {
      throw ParseError(ParseError::Kind::kInconsistentLength, lineno,
                       std::to_string(axes.size()) + " qubits vs " +
                           std::to_string(width) + " on line " +
                           std::to_string(first_line));
    }
    terms.push_back({coeff, PauliString::from_string(axes)});
  }
  if (terms.empty()) {
    throw ParseError(ParseError::Kind::kEmptyInput, 0, "no terms");
  }
  return Hamiltonian(width, std::move(terms));
}

Hamiltonian parse_hamiltonian(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hamiltonian(in);
}

Hamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file: " + path);
  return parse_hamiltonian(in);
}

std::string serialize_hamiltonian(const Hamiltonian& h) {
  std::string out;
  char buf[64];
  for (const auto& t : h.terms()) {
    std::snprintf(buf, sizeof(buf), "%.17g ", t.coefficient);
    out += buf;
    out += t.op.to_string();
    out += '\n';
  }
  std::snprintf(buf, sizeof(buf), "%.17g ", h.identity_offset());
  out += buf;
  out += std::string(h.n_qubits(), 'I');
  out += '\n';
  return out;
}

Hamiltonian toy_model(std::size_t n_qubits) {
  if (n_qubits < 2 || n_qubits > 10) {
    throw std::invalid_argument("toy model needs 2 <= n <= 10, got " +
                                std::to_string(n_qubits));
  }
  const double small = std::ldexp(1.0, -2 * static_cast<int>(n_qubits));
  std::vector<PauliTerm> terms;
  PauliString all_z(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) all_z.set_axis(q, Axis::Z);
  terms.push_back({1.0, all_z});
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_qubits); ++mask) {
    PauliString p(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
      if (mask >> q & 1u) p.set_axis(q, Axis::X);
    }
    terms.push_back({small, p});
  }
  return Hamiltonian(n_qubits, std::move(terms));
}

Hamiltonian random_structured_hamiltonian(std::size_t n_qubits,
                                          std::size_t n_terms,
                                          std::uint64_t seed) {
  if (n_qubits < 2) throw std::invalid_argument("need at least 2 qubits");
  Xoshiro256 rng(seed);
  std::unordered_map<PauliString, bool, PauliStringHash> seen;
  std::vector<PauliTerm> terms;
  const std::size_t max_weight = std::min<std::size_t>(4, n_qubits);
  std::size_t attempts = 0;
  while (terms.size() < n_terms) {
    if (++attempts > 1000 * n_terms + 10000) {
      throw std::invalid_argument("cannot draw " + std::to_string(n_terms) +
                                  " distinct terms on " +
                                  std::to_string(n_qubits) + " qubits");
    }
    PauliString p(n_qubits);
    const bool diagonal = rng.uniform() < 0.35;
    if (diagonal) {
      const std::size_t w = 1 + rng.below(max_weight);
      std::size_t placed = 0;
      while (placed < w) {
        const auto q = rng.below(n_qubits);
        if (p.axis(q) == Axis::I) {
          p.set_axis(q, Axis::Z);
          ++placed;
        }
      }
    } else {
      const std::size_t w = 2 + rng.below(max_weight - 1);
      std::size_t placed = 0;
      while (placed < w) {
        const auto q = rng.below(n_qubits);
        if (p.axis(q) == Axis::I) {
          static constexpr Axis kAxes[] = {Axis::X, Axis::Y, Axis::Z};
          p.set_axis(q, kAxes[rng.below(3)]);
          ++placed;
        }
      }
      if (p.count_y() % 2 == 1) continue;
      if (p.x_mask64() == 0) continue;  // ended up diagonal
    }
    if (!seen.emplace(p, true).second) continue;
    const double log_mag = rng.uniform(std::log(1e-3), 0.0);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    terms.push_back({sign * std::exp(log_mag), p});
  }
  return Hamiltonian(n_qubits, std::move(terms));
}

}  // namespace qmeas
