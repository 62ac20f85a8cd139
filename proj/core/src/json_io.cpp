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

#include "qmeas/json_io.hpp"

namespace qmeas {

using nlohmann::json;

json to_json(const GroupSet& groups, const Hamiltonian& h) {
  json arr = json::array();
  for (const auto& g : groups.groups()) {
    json ops = json::array();
    for (std::size_t l : g.members) ops.push_back(h.term(l).op.to_string());
    arr.push_back({{"basis", g.basis.to_string()},
                   {"core", g.core},
                   {"added", g.added},
                   {"members", g.members},
                   {"operators", std::move(ops)},
                   {"size", g.members.size()}});
  }
  return {{"n_qubits", h.n_qubits()},
          {"n_terms", h.size()},
          {"n_groups", groups.size()},
          {"groups", std::move(arr)}};
}

json to_json(const Allocation& alloc) {
  return {{"weights", alloc.weights},
          {"shots", alloc.shots},
          {"epsilon", alloc.epsilon},
          {"budget", alloc.budget},
          {"delta", alloc.delta},
          {"support_size", alloc.support_size},
          {"n_circuit", alloc.support_size},
          {"iterations", alloc.iterations},
          {"stationarity", alloc.stationarity}};
}

json to_json(const EnergyEstimate& est, const Hamiltonian& h) {
  json terms = json::array();
  for (std::size_t l = 0; l < est.terms.size(); ++l) {
    const auto& t = est.terms[l];
    terms.push_back({{"operator", h.term(l).op.to_string()},
                     {"coefficient", h.term(l).coefficient},
                     {"estimate", t.estimate},
                     {"samples", t.samples},
                     {"variance", t.variance},
                     {"blocks", t.blocks},
                     {"measured", t.measured}});
  }
  json warnings = json::array();
  for (std::size_t l : est.unmeasured) {
    warnings.push_back("term " + std::to_string(l) + " (" +
                       h.term(l).op.to_string() + ") unmeasured; contributes 0");
  }
  return {{"value", est.value},
          {"identity_offset", h.identity_offset()},
          {"estimator", to_string(est.kind)},
          {"terms", std::move(terms)},
          {"unmeasured", est.unmeasured},
          {"warnings", std::move(warnings)}};
}

json to_json(const BenchResult& result) {
  json methods = json::array();
  for (const auto& m : result.methods) {
    methods.push_back({{"method", to_string(m.method)},
                       {"rmse", m.rmse},
                       {"mae", m.mae},
                       {"n_circuit", m.n_circuit},
                       {"n_groups", m.n_groups},
                       {"estimates", m.estimates},
                       {"wall_ms", m.wall_ms ? json(*m.wall_ms) : json(nullptr)}});
  }
  return {{"hamiltonian", result.label},
          {"exact_energy", result.exact_energy},
          {"M", result.budget},
          {"repeats", result.repeats},
          {"seed", result.seed},
          {"methods", std::move(methods)}};
}

}  // namespace qmeas
