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

// Slow, independent reference implementations used by the tests. Nothing
// here calls into the library except for reading its plain data types.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qmeas/hamiltonian.hpp"

namespace qmeas::oracle {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row-major

inline Mat2 pauli_matrix(char c) {
  switch (c) {
    case 'X':
      return {0, 1, 1, 0};
    case 'Y':
      return {0, cd(0, -1), cd(0, 1), 0};
    case 'Z':
      return {1, 0, 0, -1};
    default:
      return {1, 0, 0, 1};
  }
}

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

/// Per-site commutator test with explicit 2x2 matrices.
inline bool qwc_bruteforce(const std::string& p, const std::string& q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Mat2 a = pauli_matrix(p[i]);
    const Mat2 b = pauli_matrix(q[i]);
    const Mat2 ab = mul(a, b);
    const Mat2 ba = mul(b, a);
    for (int k = 0; k < 4; ++k) {
      if (std::abs(ab[k] - ba[k]) > 1e-12) return false;
    }
  }
  return true;
}

/// Dense matrix of a Pauli string by Kronecker products. Basis index bit q is
/// qubit q, so qubit n-1 is the leftmost Kronecker factor.
inline Eigen::MatrixXcd pauli_dense(const std::string& s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t k = s.size(); k-- > 0;) {
    const Mat2 p = pauli_matrix(s[k]);
    Eigen::Matrix2cd f;
    f << p[0], p[1], p[2], p[3];
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        next.block<2, 2>(2 * r, 2 * c) = m(r, c) * f;
      }
    }
    m = std::move(next);
  }
  return m;
}

inline Eigen::MatrixXcd hamiltonian_dense(const Hamiltonian& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd m = h.identity_offset() * Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& t : h.terms()) m += t.coefficient * pauli_dense(t.op.to_string());
  return m;
}

/// Smallest eigenvalue through the general (non-Hermitian) complex Schur
/// solver, a different algorithm from the library's.
inline double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    lo = std::min(lo, es.eigenvalues()(i).real());
  }
  return lo;
}

inline double expectation_dense(const std::string& op,
                                const std::vector<cd>& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.size()));
  for (std::size_t i = 0; i < psi.size(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
  return (v.adjoint() * pauli_dense(op) * v)(0, 0).real();
}

/// Exact minimum clique cover size by DP over vertex subsets (n <= ~12).
inline std::size_t min_clique_cover_size(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& adj) {
  const std::uint32_t full = (1u << n) - 1;
  std::vector<char> clique(full + 1, 1);
  for (std::uint32_t m = 1; m <= full; ++m) {
    const int lo = __builtin_ctz(m);
    const std::uint32_t rest = m & (m - 1);
    if (!clique[rest]) {
      clique[m] = 0;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if ((rest >> j) & 1u && !adj(static_cast<std::size_t>(lo), j)) {
        clique[m] = 0;
        break;
      }
    }
  }
  std::vector<std::size_t> best(full + 1, n + 1);
  best[0] = 0;
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::uint32_t low = m & (~m + 1);
    const std::uint32_t rest = m ^ low;
    // Enumerate submasks of `rest`; the class containing the lowest vertex.
    for (std::uint32_t s = rest;; s = (s - 1) & rest) {
      const std::uint32_t cls = s | low;
      if (clique[cls]) best[m] = std::min(best[m], best[m ^ cls] + 1);
      if (s == 0) break;
    }
  }
  return best[full];
}

/// Size of a maximum clique among `cand` by subset enumeration.
inline std::size_t max_clique_size(
    const std::vector<std::size_t>& cand,
    const std::function<bool(std::size_t, std::size_t)>& adj) {
  const std::size_t k = cand.size();
  std::size_t best = 0;
  for (std::uint32_t m = 0; m < (1u << k); ++m) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (!((m >> i) & 1u)) continue;
      for (std::size_t j = i + 1; j < k; ++j) {
        if ((m >> j) & 1u && !adj(cand[i], cand[j])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) best = std::max<std::size_t>(best, __builtin_popcount(m));
  }
  return best;
}

/// Per-operator union bound written straight from its formula:
///   2 sum_l exp(-eps^2 M / (2 S^2) * sum_a idx[l][a] w[a]).
inline double per_operator_bound(const std::vector<std::vector<int>>& idx,
                                 double abs_sum, double eps, double budget,
                                 const std::vector<double>& w) {
  const double k = eps * eps * budget / (2.0 * abs_sum * abs_sum);
  double d = 0.0;
  for (const auto& row : idx) {
    double cov = 0.0;
    for (std::size_t a = 0; a < w.size(); ++a) cov += row[a] * w[a];
    d += 2.0 * std::exp(-k * cov);
  }
  return d;
}

/// Argmin over the simplex grid with spacing `step` (1 to 3 coordinates).
inline std::vector<double> simplex_grid_argmin(
    std::size_t dim, double step,
    const std::function<double(const std::vector<double>&)>& f) {
  const auto n = static_cast<long>(std::llround(1.0 / step));
  std::vector<double> best_w;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<double> w) {
    const double v = f(w);
    if (v < best) {
      best = v;
      best_w = std::move(w);
    }
  };
  if (dim == 1) return {1.0};
  for (long i = 0; i <= n; ++i) {
    if (dim == 2) {
      consider({i * step, (n - i) * step});
      continue;
    }
    for (long j = 0; i + j <= n; ++j) {
      consider({i * step, j * step, (n - i - j) * step});
    }
  }
  return best_w;
}

/// Random Pauli string with i.i.d. uniform axes.
inline std::string random_pauli(std::size_t n, std::mt19937_64& rng,
                                bool allow_identity = true) {
  static const char kAxes[] = "IXYZ";
  for (;;) {
    std::string s(n, 'I');
    for (auto& c : s) c = kAxes[rng() % 4];
    if (allow_identity || s.find_first_not_of('I') != std::string::npos) return s;
  }
}

/// Random Hamiltonian with L distinct non-identity terms.
inline Hamiltonian random_hamiltonian(std::size_t n, std::size_t L,
                                      std::mt19937_64& rng) {
  std::vector<PauliTerm> terms;
  std::vector<std::string> seen;
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  while (terms.size() < L) {
    const std::string s = random_pauli(n, rng, false);
    if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
    seen.push_back(s);
    double c = coef(rng);
    if (c == 0.0) c = 0.5;
    terms.push_back({c, PauliString::from_string(s)});
  }
  return Hamiltonian(n, std::move(terms));
}

}  // namespace qmeas::oracle
