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

#include "qmeas/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace qmeas {

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kHoeffdingPerOperator:
      return "per-op";
    case BoundKind::kHoeffdingPerGroup:
      return "per-group";
    case BoundKind::kBernstein:
      return "bernstein";
  }
  return "unknown";
}

BoundKind parse_bound_kind(const std::string& name) {
  if (name == "per-op") return BoundKind::kHoeffdingPerOperator;
  if (name == "per-group") return BoundKind::kHoeffdingPerGroup;
  if (name == "bernstein") return BoundKind::kBernstein;
  throw std::invalid_argument("unknown bound kind '" + name +
                              "' (expected per-op, per-group or bernstein)");
}

OverlapWeights make_overlap_weights(const GroupSet& groups, const Hamiltonian& h,
                                    OverlapWeighting rule,
                                    double low_weight_fraction) {
  const std::size_t L = groups.n_terms();
  const std::size_t A = groups.size();
  OverlapWeights wo{L, A, std::vector<double>(L * A, 0.0)};

  std::vector<bool> eligible(A, true);
  if (rule == OverlapWeighting::kZeroLowWeight) {
    std::vector<double> mass(A, 0.0);
    for (std::size_t a = 0; a < A; ++a) {
      for (std::size_t m : groups.group(a).members) {
        mass[a] += std::abs(h.term(m).coefficient);
      }
    }
    const double top = A ? *std::max_element(mass.begin(), mass.end()) : 0.0;
    for (std::size_t a = 0; a < A; ++a) {
      eligible[a] = mass[a] >= low_weight_fraction * top;
    }
  }

  for (std::size_t l = 0; l < L; ++l) {
    const auto& gs = groups.groups_of(l);
    if (gs.empty()) continue;
    switch (rule) {
      case OverlapWeighting::kInverseMultiplicity:
        for (std::size_t a : gs) wo.values[l * A + a] = 1.0 / gs.size();
        break;
      case OverlapWeighting::kGroupSize: {
        double total = 0.0;
        for (std::size_t a : gs) total += groups.group(a).members.size();
        for (std::size_t a : gs) {
          wo.values[l * A + a] = groups.group(a).members.size() / total;
        }
        break;
      }
      case OverlapWeighting::kZeroLowWeight: {
        std::size_t count = 0;
        for (std::size_t a : gs) count += eligible[a] ? 1 : 0;
        for (std::size_t a : gs) {
          if (count == 0) {
            wo.values[l * A + a] = 1.0 / gs.size();
          } else if (eligible[a]) {
            wo.values[l * A + a] = 1.0 / count;
          }
        }
        break;
      }
    }
  }
  return wo;
}

namespace {

void check_simplex(std::span<const double> w, std::size_t n_groups) {
  if (w.size() != n_groups) {
    throw std::invalid_argument("weight vector has " + std::to_string(w.size()) +
                                " entries for " + std::to_string(n_groups) +
                                " groups");
  }
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= -1e-9)) throw std::invalid_argument("negative weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("weights sum to " + std::to_string(sum) +
                                ", not 1");
  }
}

// log(sum_j exp(z_j)) with the usual max shift; `p` receives softmax(z).
double log_sum_exp(const std::vector<double>& z, std::vector<double>* p) {
  if (z.empty()) return -std::numeric_limits<double>::infinity();
  const double zmax = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  if (p) p->resize(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double e = std::exp(z[j] - zmax);
    if (p) (*p)[j] = e;
    s += e;
  }
  if (p) {
    for (auto& x : *p) x /= s;
  }
  return zmax + std::log(s);
}

std::vector<double> exponents(const BoundModel& model, std::span<const double> w) {
  std::vector<double> z(model.rows.size());
  for (std::size_t j = 0; j < model.rows.size(); ++j) {
    double acc = 0.0;
    for (const auto& e : model.rows[j]) acc += e.rate * w[e.group];
    z[j] = -acc;
  }
  return z;
}

// log(delta) and its gradient.
double objective(const BoundModel& model, std::span<const double> w,
                 std::vector<double>& grad) {
  const auto z = exponents(model, w);
  std::vector<double> p;
  const double lse = log_sum_exp(z, &p);
  grad.assign(model.n_groups, 0.0);
  for (std::size_t j = 0; j < model.rows.size(); ++j) {
    for (const auto& e : model.rows[j]) grad[e.group] -= p[j] * e.rate;
  }
  return std::log(2.0) + lse;
}

}  // namespace

BoundSpec make_bound_spec(BoundKind kind, double epsilon, std::uint64_t budget,
                          const GroupSet& groups, const Hamiltonian& h) {
  BoundSpec spec;
  spec.kind = kind;
  spec.epsilon = epsilon;
  spec.budget = budget;
  if (kind == BoundKind::kHoeffdingPerGroup) {
    spec.overlap_weights =
        make_overlap_weights(groups, h, OverlapWeighting::kInverseMultiplicity);
  } else if (kind == BoundKind::kBernstein) {
    spec.operator_stats = std::vector<OperatorStats>(h.size());
  }
  return spec;
}

BoundModel build_bound_model(const BoundSpec& spec, const GroupSet& groups,
                             const Hamiltonian& h) {
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (spec.budget == 0) throw std::invalid_argument("budget must be >= 1");
  if (groups.n_terms() != h.size()) {
    throw std::invalid_argument("group set does not match the Hamiltonian");
  }
  const double total = h.abs_coeff_sum();
  if (!(total > 0.0)) {
    throw std::invalid_argument("Hamiltonian has no non-zero non-identity term");
  }
  const std::size_t L = h.size();
  const std::size_t A = groups.size();
  const double eps2m = spec.epsilon * spec.epsilon * static_cast<double>(spec.budget);

  BoundModel model;
  model.n_groups = A;

  switch (spec.kind) {
    case BoundKind::kHoeffdingPerOperator: {
      const double rate = eps2m / (2.0 * total * total);
      model.rows.resize(L);
      for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t a : groups.groups_of(l)) model.rows[l].push_back({a, rate});
      }
      break;
    }
    case BoundKind::kHoeffdingPerGroup: {
      if (!spec.overlap_weights) {
        throw std::invalid_argument("per-group bound needs overlap weights");
      }
      const auto& wo = *spec.overlap_weights;
      if (wo.n_terms != L || wo.n_groups != A || wo.values.size() != L * A) {
        throw std::invalid_argument("overlap weight matrix has the wrong shape");
      }
      for (std::size_t l = 0; l < L; ++l) {
        double row_sum = 0.0;
        for (std::size_t a = 0; a < A; ++a) {
          if (wo.at(l, a) < 0.0) {
            throw std::invalid_argument("negative overlap weight");
          }
          row_sum += wo.at(l, a);
        }
        if (std::abs(row_sum - 1.0) > 1e-9) {
          throw std::invalid_argument("overlap weights of term " +
                                      std::to_string(l) + " do not sum to 1");
        }
      }
      const double a_count = static_cast<double>(A);
      for (std::size_t a = 0; a < A; ++a) {
        double scale = 0.0;
        for (std::size_t m : groups.group(a).members) {
          scale += std::abs(h.term(m).coefficient) * wo.at(m, a);
        }
        // A group carrying no weighted mass cannot fail its tail event.
        if (scale <= 0.0) continue;
        const double denom = 2.0 * (a_count * scale) * (a_count * scale);
        model.rows.push_back({{a, eps2m / denom}});
      }
      break;
    }
    case BoundKind::kBernstein: {
      if (!spec.operator_stats) {
        throw std::invalid_argument("bernstein bound needs operator statistics");
      }
      const auto& stats = *spec.operator_stats;
      if (stats.size() != L) {
        throw std::invalid_argument("operator statistics size mismatch");
      }
      double global_max = 0.0;
      for (const auto& s : stats) {
        if (!(s.variance >= 0.0)) {
          throw std::invalid_argument("operator variance must be >= 0");
        }
        global_max = std::max(global_max, std::clamp(s.max_abs, 0.0, 1.0));
      }
      const double rate = eps2m / (2.0 * total * total);
      for (std::size_t l = 0; l < L; ++l) {
        const double m = spec.bernstein_scale == BernsteinScale::kGlobal
                             ? global_max
                             : std::clamp(stats[l].max_abs, 0.0, 1.0);
        const double denom = stats[l].variance + spec.epsilon * m / 3.0;
        // Zero spread means an infinite exponent: the term never fails.
        if (denom <= 0.0) continue;
        std::vector<BoundModel::Entry> row;
        for (std::size_t a : groups.groups_of(l)) row.push_back({a, rate / denom});
        model.rows.push_back(std::move(row));
      }
      break;
    }
  }
  return model;
}

double log_conf_bound(const BoundModel& model, std::span<const double> w) {
  return std::log(2.0) + log_sum_exp(exponents(model, w), nullptr);
}

double conf_bound(const BoundModel& model, std::span<const double> w) {
  double s = 0.0;
  for (double z : exponents(model, w)) s += std::exp(z);
  return 2.0 * s;
}

double conf_bound(const BoundSpec& spec, const GroupSet& groups,
                  const Hamiltonian& h, std::span<const double> w) {
  check_simplex(w, groups.size());
  return conf_bound(build_bound_model(spec, groups, h), w);
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumsum += u[i];
    const double t = (cumsum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

namespace {

double stationarity(std::span<const double> w, std::span<const double> g) {
  std::vector<double> step(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) step[i] = w[i] - g[i];
  const auto p = project_to_simplex(step);
  double r = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) r = std::max(r, std::abs(w[i] - p[i]));
  return r;
}

Allocation finish(std::vector<double> w, const BoundModel& model,
                  const BoundSpec& spec, std::size_t iters, double station) {
  Allocation out;
  out.delta = std::exp(log_conf_bound(model, w));
  out.shots = weights_to_shots(w, spec.budget);
  out.weights = std::move(w);
  out.epsilon = spec.epsilon;
  out.budget = spec.budget;
  out.support_size = support_size(out.shots);
  out.iterations = iters;
  out.stationarity = station;
  return out;
}

}  // namespace

Allocation optimize_weights(const BoundSpec& spec, const GroupSet& groups,
                            const Hamiltonian& h, const SolverOptions& opts) {
  const std::size_t A = groups.size();
  if (A == 0) throw std::invalid_argument("no groups to allocate over");
  const BoundModel model = build_bound_model(spec, groups, h);

  std::vector<double> w(A, 1.0 / static_cast<double>(A));
  if (A == 1 || model.rows.empty()) return finish(std::move(w), model, spec, 0, 0.0);

  std::vector<double> g;
  double f = objective(model, w, g);
  double g_inf = 0.0;
  for (double x : g) g_inf = std::max(g_inf, std::abs(x));
  double step = g_inf > 0.0 ? 1.0 / g_inf : 1.0;

  std::deque<double> history{f};
  std::vector<double> trial(A), w_new(A), g_new;
  double station = stationarity(w, g);
  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    if (station <= opts.stationarity_tol) {
      return finish(std::move(w), model, spec, it - 1, station);
    }
    for (std::size_t i = 0; i < A; ++i) trial[i] = w[i] - step * g[i];
    const auto target = project_to_simplex(trial);
    double slope = 0.0;
    for (std::size_t i = 0; i < A; ++i) slope += g[i] * (target[i] - w[i]);

    double lambda = 1.0;
    double f_new = f;
    bool moved = false;
    while (lambda > 1e-20) {
      for (std::size_t i = 0; i < A; ++i) {
        w_new[i] = w[i] + lambda * (target[i] - w[i]);
      }
      f_new = objective(model, w_new, g_new);
      if (f_new <= f + 1e-4 * lambda * slope) {
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) {
      // No descent left at working precision.
      return finish(std::move(w), model, spec, it, station);
    }

    double ss = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < A; ++i) {
      const double s = w_new[i] - w[i];
      ss += s * s;
      sy += s * (g_new[i] - g[i]);
    }
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e12) : std::min(step * 2.0, 1e12);

    w.swap(w_new);
    g.swap(g_new);
    f = f_new;
    station = stationarity(w, g);

    history.push_back(f);
    if (history.size() > opts.decrease_window + 1) history.pop_front();
    if (history.size() == opts.decrease_window + 1) {
      const double drop = history.front() - f;
      if (drop <= opts.relative_decrease_tol * std::max(1.0, std::abs(f))) {
        return finish(std::move(w), model, spec, it, station);
      }
    }
  }
  Allocation best = finish(std::move(w), model, spec, opts.max_iters, station);
  throw SolverError("allocation solver did not converge in " +
                        std::to_string(opts.max_iters) + " iterations",
                    std::move(best));
}

std::vector<std::uint64_t> weights_to_shots(std::span<const double> w,
                                            std::uint64_t budget) {
  const std::size_t A = w.size();
  std::vector<std::uint64_t> shots(A, 0);
  if (A == 0) return shots;
  double total = 0.0;
  for (double x : w) total += std::max(x, 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("weights sum to zero");

  std::vector<double> frac(A);
  std::uint64_t assigned = 0;
  for (std::size_t a = 0; a < A; ++a) {
    const double exact = std::max(w[a], 0.0) / total * static_cast<double>(budget);
    const double fl = std::floor(exact);
    shots[a] = static_cast<std::uint64_t>(fl);
    frac[a] = exact - fl;
    assigned += shots[a];
  }
  std::vector<std::size_t> order(A);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  // Rounding noise can overshoot by a shot; take it back from the smallest
  // fractional parts.
  for (std::size_t k = A; assigned > budget && k > 0; --k) {
    const std::size_t a = order[k - 1];
    if (shots[a] > 0) {
      --shots[a];
      --assigned;
    }
  }
  for (std::size_t k = 0; assigned < budget; k = (k + 1) % A) {
    ++shots[order[k]];
    ++assigned;
  }
  return shots;
}

double naive_epsilon(const Hamiltonian& h, std::uint64_t budget, double m0) {
  if (budget == 0) throw std::invalid_argument("budget must be >= 1");
  if (!(m0 > 0.0)) throw std::invalid_argument("m0 must be > 0");
  return 2.0 * h.abs_coeff_sum() * std::sqrt(m0 / static_cast<double>(budget));
}

std::size_t support_size(std::span<const std::uint64_t> shots) {
  return static_cast<std::size_t>(
      std::count_if(shots.begin(), shots.end(), [](auto s) { return s > 0; }));
}

double weight_entropy(std::span<const double> w) {
  double h = 0.0;
  for (double x : w) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

}  // namespace qmeas
