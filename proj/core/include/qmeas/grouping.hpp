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
#include <string>
#include <vector>

#include "qmeas/hamiltonian.hpp"
#include "qmeas/pauli.hpp"

namespace qmeas {

/// Undirected graph over term indices with bitset rows. Edge (i, j) iff the
/// two terms qubit-wise commute. No self loops.
class QwcGraph {
 public:
  QwcGraph() = default;
  explicit QwcGraph(std::size_t n_nodes);

  std::size_t size() const { return n_; }
  bool adjacent(std::size_t i, std::size_t j) const {
    return (rows_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void add_edge(std::size_t i, std::size_t j);
  std::size_t degree(std::size_t i) const;
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {rows_.data() + i * words_, words_};
  }
  std::size_t words_per_row() const { return words_; }

  /// Number of undirected edges.
  std::size_t edge_count() const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Throws std::invalid_argument when `h` has no non-identity term.
QwcGraph build_qwc_graph(const Hamiltonian& h);

/// Greedy largest-degree-first coloring of the complement graph; each color
/// class is a clique of `g`. Classes are returned in color order, members
/// ascending.
std::vector<std::vector<std::size_t>> min_clique_cover(const QwcGraph& g);

inline constexpr std::size_t kDefaultExactCliqueCutoff = 40;

/// Largest clique of `g` inside `candidates`. Exact branch and bound with a
/// greedy-coloring bound while |candidates| <= exact_cutoff, otherwise a
/// greedy clique grown along a degeneracy order. Result is sorted.
std::vector<std::size_t> max_clique(
    std::span<const std::size_t> candidates, const QwcGraph& g,
    std::size_t exact_cutoff = kDefaultExactCliqueCutoff);

struct Group {
  std::vector<std::size_t> core;     // disjoint clique-cover class
  std::vector<std::size_t> added;    // absorbed from other classes
  std::vector<std::size_t> members;  // core + added, ascending
  PauliString basis;                 // full-support measurement basis
};

/// Overlapping groups of term indices with their measurement bases.
class GroupSet {
 public:
  GroupSet() = default;
  GroupSet(std::size_t n_terms, std::vector<Group> groups);

  /// Groups built from explicit member lists (each used as its own core);
  /// bases completed with `fill`. Throws if a list is not mutually QWC.
  static GroupSet from_members(const Hamiltonian& h,
                               const std::vector<std::vector<std::size_t>>& sets,
                               Axis fill = Axis::Z);

  std::size_t n_terms() const { return n_terms_; }
  std::size_t size() const { return groups_.size(); }
  const std::vector<Group>& groups() const { return groups_; }
  const Group& group(std::size_t alpha) const { return groups_.at(alpha); }

  /// idx_{term, alpha}.
  bool contains(std::size_t term, std::size_t alpha) const {
    return membership_[term * groups_.size() + alpha] != 0;
  }
  /// Groups that contain `term`, ascending.
  const std::vector<std::size_t>& groups_of(std::size_t term) const {
    return groups_of_.at(term);
  }
  std::size_t multiplicity(std::size_t term) const {
    return groups_of_.at(term).size();
  }

 private:
  std::size_t n_terms_ = 0;
  std::vector<Group> groups_;
  std::vector<std::uint8_t> membership_;
  std::vector<std::vector<std::size_t>> groups_of_;
};

struct GroupingOptions {
  std::size_t exact_cutoff = kDefaultExactCliqueCutoff;
  Axis default_axis = Axis::Z;  // basis axis on qubits no member touches
};

/// Minimum-clique-cover cores, each expanded by a maximum clique of outside
/// terms compatible with the core's basis.
GroupSet maxmin_grouping(const Hamiltonian& h, const GroupingOptions& opts = {});

/// Per-qubit common axis of `members`; qubits no member touches get `fill`.
PauliString group_basis(const Hamiltonian& h,
                        std::span<const std::size_t> members, Axis fill);

/// Checks coverage, intra-group QWC, basis coverage and core partition.
/// Returns a description of the first violation, or nullopt.
std::optional<std::string> check_group_set(const GroupSet& groups,
                                           const Hamiltonian& h);

}  // namespace qmeas
