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

#include <nlohmann/json.hpp>

#include "qmeas/allocation.hpp"
#include "qmeas/bench.hpp"
#include "qmeas/estimation.hpp"
#include "qmeas/grouping.hpp"
#include "qmeas/hamiltonian.hpp"

namespace qmeas {

nlohmann::json to_json(const GroupSet& groups, const Hamiltonian& h);
nlohmann::json to_json(const Allocation& alloc);
/// Includes per-term diagnostics and the unmeasured-term warning list.
nlohmann::json to_json(const EnergyEstimate& est, const Hamiltonian& h);
nlohmann::json to_json(const BenchResult& result);

}  // namespace qmeas
