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

#include "qmeas/grouping.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace qmeas {

QwcGraph::QwcGraph(std::size_t n_nodes)
    : n_(n_nodes), words_((n_nodes + 63) / 64), rows_(n_ * words_, 0) {}

void QwcGraph::add_edge(std::size_t i, std::size_t j) {
  if (i == j) return;
  rows_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  rows_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
}

std::size_t QwcGraph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (auto w : row(i)) d += std::popcount(w);
  return d;
}

std::size_t QwcGraph::edge_count() const {
  std::size_t twice = 0;
  for (std::size_t i = 0; i < n_; ++i) twice += degree(i);
  return twice / 2;
}

QwcGraph build_qwc_graph(const Hamiltonian& h) {
  if (h.empty()) {
    throw std::invalid_argument("cannot group a Hamiltonian without terms");
  }
  QwcGraph g(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      if (qwc(h.term(i).op, h.term(j).op)) g.add_edge(i, j);
    }
  }
  return g;
}

std::vector<std::vector<std::size_t>> min_clique_cover(const QwcGraph& g) {
  const std::size_t n = g.size();
  // Complement degree = (n - 1) - degree in g.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> comp_degree(n);
  for (std::size_t v = 0; v < n; ++v) comp_degree[v] = n - 1 - g.degree(v);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return comp_degree[a] > comp_degree[b];
  });

  const std::size_t words = g.words_per_row();
  std::vector<std::vector<std::uint64_t>> color_sets;
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t v : order) {
    const auto row = g.row(v);
    std::size_t chosen = classes.size();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      bool fits = true;
      for (std::size_t w = 0; w < words && fits; ++w) {
        fits = (color_sets[c][w] & ~row[w]) == 0;
      }
      if (fits) {
        chosen = c;
        break;
      }
    }
    if (chosen == classes.size()) {
      classes.emplace_back();
      color_sets.emplace_back(words, 0);
    }
    classes[chosen].push_back(v);
    color_sets[chosen][v / 64] |= std::uint64_t{1} << (v % 64);
  }
  for (auto& c : classes) std::sort(c.begin(), c.end());
  return classes;
}

namespace {

/// Exact maximum clique on at most 64 vertices with local bitmask adjacency.
/// Greedy sequential coloring provides the upper bound at each node.
class SmallCliqueSolver {
 public:
  explicit SmallCliqueSolver(std::vector<std::uint64_t> adj)
      : adj_(std::move(adj)) {}

  std::uint64_t solve() {
    const std::size_t n = adj_.size();
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    expand(0, 0, all);
    return best_;
  }

 private:
  void expand(std::uint64_t current, int current_size, std::uint64_t candidates) {
    std::vector<int> order;
    std::vector<int> bound;
    color_sort(candidates, order, bound);
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (current_size + bound[i] <= best_size_) return;
      const int v = order[i];
      const std::uint64_t next = candidates & adj_[v];
      const std::uint64_t with_v = current | (std::uint64_t{1} << v);
      if (next == 0) {
        if (current_size + 1 > best_size_) {
          best_size_ = current_size + 1;
          best_ = with_v;
        }
      } else {
        expand(with_v, current_size + 1, next);
      }
      candidates &= ~(std::uint64_t{1} << v);
    }
  }

  // Vertices listed by color class; bound[i] is the color number (1-based) of
  // order[i], an upper bound on the clique size within order[0..i].
  void color_sort(std::uint64_t candidates, std::vector<int>& order,
                  std::vector<int>& bound) const {
    int color = 0;
    std::uint64_t uncolored = candidates;
    while (uncolored) {
      ++color;
      std::uint64_t available = uncolored;
      while (available) {
        const int v = std::countr_zero(available);
        available &= ~(std::uint64_t{1} << v);
        available &= ~adj_[v];
        uncolored &= ~(std::uint64_t{1} << v);
        order.push_back(v);
        bound.push_back(color);
      }
    }
  }

  std::vector<std::uint64_t> adj_;
  std::uint64_t best_ = 0;
  int best_size_ = 0;
};

std::vector<std::size_t> greedy_degeneracy_clique(
    std::span<const std::size_t> cand, const QwcGraph& g) {
  const std::size_t k = cand.size();
  std::vector<std::size_t> deg(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b && g.adjacent(cand[a], cand[b])) ++deg[a];
    }
  }
  // Peel minimum-degree vertices; the reverse peel order visits dense cores
  // first.
  std::vector<bool> removed(k, false);
  std::vector<std::size_t> peel;
  peel.reserve(k);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = k;
    for (std::size_t a = 0; a < k; ++a) {
      if (!removed[a] && (pick == k || deg[a] < deg[pick])) pick = a;
    }
    removed[pick] = true;
    peel.push_back(pick);
    for (std::size_t b = 0; b < k; ++b) {
      if (!removed[b] && g.adjacent(cand[pick], cand[b])) --deg[b];
    }
  }
  std::vector<std::size_t> clique;
  for (auto it = peel.rbegin(); it != peel.rend(); ++it) {
    const std::size_t v = cand[*it];
    const bool fits = std::all_of(clique.begin(), clique.end(), [&](std::size_t u) {
      return g.adjacent(u, v);
    });
    if (fits) clique.push_back(v);
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

}  // namespace

std::vector<std::size_t> max_clique(std::span<const std::size_t> candidates,
                                    const QwcGraph& g, std::size_t exact_cutoff) {
  if (candidates.empty()) return {};
  if (candidates.size() > std::min<std::size_t>(exact_cutoff, 64)) {
    return greedy_degeneracy_clique(candidates, g);
  }
  std::vector<std::uint64_t> adj(candidates.size(), 0);
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = 0; b < candidates.size(); ++b) {
      if (a != b && g.adjacent(candidates[a], candidates[b])) {
        adj[a] |= std::uint64_t{1} << b;
      }
    }
  }
  std::uint64_t best = SmallCliqueSolver(std::move(adj)).solve();
  std::vector<std::size_t> out;
  while (best) {
    const int b = std::countr_zero(best);
    best &= best - 1;
    out.push_back(candidates[b]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PauliString group_basis(const Hamiltonian& h, std::span<const std::size_t> members,
                        Axis fill) {
  const std::size_t n = h.n_qubits();
  PauliString basis(n);
  std::vector<bool> set(n, false);
  for (std::size_t m : members) {
    const auto& op = h.term(m).op;
    for (std::size_t q = 0; q < n; ++q) {
      const Axis a = op.axis(q);
      if (a == Axis::I) continue;
      if (set[q] && basis.axis(q) != a) {
        throw std::invalid_argument("group members disagree on qubit " +
                                    std::to_string(q));
      }
      basis.set_axis(q, a);
      set[q] = true;
    }
  }
  if (fill != Axis::I) {
    for (std::size_t q = 0; q < n; ++q) {
      if (!set[q]) basis.set_axis(q, fill);
    }
  }
  return basis;
}

GroupSet::GroupSet(std::size_t n_terms, std::vector<Group> groups)
    : n_terms_(n_terms),
      groups_(std::move(groups)),
      membership_(n_terms * groups_.size(), 0),
      groups_of_(n_terms) {
  for (std::size_t a = 0; a < groups_.size(); ++a) {
    for (std::size_t m : groups_[a].members) {
      if (m >= n_terms) throw std::out_of_range("group member out of range");
      membership_[m * groups_.size() + a] = 1;
    }
  }
  for (std::size_t t = 0; t < n_terms; ++t) {
    for (std::size_t a = 0; a < groups_.size(); ++a) {
      if (contains(t, a)) groups_of_[t].push_back(a);
    }
  }
}

GroupSet GroupSet::from_members(const Hamiltonian& h,
                                const std::vector<std::vector<std::size_t>>& sets,
                                Axis fill) {
  std::vector<Group> groups;
  for (const auto& s : sets) {
    Group g;
    g.core = s;
    std::sort(g.core.begin(), g.core.end());
    g.members = g.core;
    g.basis = group_basis(h, g.members, fill);
    groups.push_back(std::move(g));
  }
  return GroupSet(h.size(), std::move(groups));
}

GroupSet maxmin_grouping(const Hamiltonian& h, const GroupingOptions& opts) {
  const QwcGraph graph = build_qwc_graph(h);
  const auto cores = min_clique_cover(graph);

  std::vector<Group> groups;
  groups.reserve(cores.size());
  std::vector<bool> in_core(h.size());
  for (const auto& core : cores) {
    // Identity positions of the core basis act as wildcards here.
    const PauliString core_basis = group_basis(h, core, Axis::I);
    std::fill(in_core.begin(), in_core.end(), false);
    for (std::size_t m : core) in_core[m] = true;

    std::vector<std::size_t> candidates;
    for (std::size_t l = 0; l < h.size(); ++l) {
      if (!in_core[l] && qwc(h.term(l).op, core_basis)) candidates.push_back(l);
    }

    Group g;
    g.core = core;
    g.added = max_clique(candidates, graph, opts.exact_cutoff);
    g.members = g.core;
    g.members.insert(g.members.end(), g.added.begin(), g.added.end());
    std::sort(g.members.begin(), g.members.end());
    g.basis = group_basis(h, g.members, opts.default_axis);
    groups.push_back(std::move(g));
  }
  return GroupSet(h.size(), std::move(groups));
}

std::optional<std::string> check_group_set(const GroupSet& groups,
                                           const Hamiltonian& h) {
  if (groups.n_terms() != h.size()) return "term count mismatch";
  std::vector<int> core_hits(h.size(), 0);
  for (std::size_t a = 0; a < groups.size(); ++a) {
    const Group& g = groups.group(a);
    for (std::size_t m : g.core) ++core_hits[m];
    if (!std::is_sorted(g.members.begin(), g.members.end())) {
      return "group " + std::to_string(a) + " members not sorted";
    }
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      const auto& op = h.term(g.members[i]).op;
      if (!covered_by(op, g.basis)) {
        return "group " + std::to_string(a) + " basis " + g.basis.to_string() +
               " does not cover " + op.to_string();
      }
      for (std::size_t j = i + 1; j < g.members.size(); ++j) {
        if (!qwc(op, h.term(g.members[j]).op)) {
          return "group " + std::to_string(a) + " holds non-QWC pair " +
                 op.to_string() + ", " + h.term(g.members[j]).op.to_string();
        }
      }
    }
    if (g.basis.weight() != g.basis.n_qubits()) {
      return "group " + std::to_string(a) + " basis is not full support";
    }
    for (std::size_t m : g.core) {
      if (!std::binary_search(g.members.begin(), g.members.end(), m)) {
        return "group " + std::to_string(a) + " core not within members";
      }
    }
  }
  for (std::size_t l = 0; l < h.size(); ++l) {
    if (core_hits[l] != 1) {
      return "term " + std::to_string(l) + " appears in " +
             std::to_string(core_hits[l]) + " cores";
    }
    if (groups.multiplicity(l) == 0) {
      return "term " + std::to_string(l) + " is in no group";
    }
  }
  return std::nullopt;
}

}  // namespace qmeas
