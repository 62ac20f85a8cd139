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

// Regenerates the Hamiltonian files under fixtures/.
//   make_fixtures <output dir>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "qmeas/hamiltonian.hpp"

namespace {

// Fixed seeds; changing them changes every golden value in the tests.
constexpr std::uint64_t kRandomSeeds[2][2] = {{0x51ed2701, 0x51ed2702},
                                             {0x51ed2703, 0x51ed2704}};

bool write(const std::string& path, const qmeas::Hamiltonian& h,
           const std::string& comment) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << path << "\n";
    return false;
  }
  f << "# " << comment << "\n" << qmeas::serialize_hamiltonian(h);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  bool ok = true;
  for (std::size_t n = 3; n <= 6; ++n) {
    ok &= write(dir + "/toy_n" + std::to_string(n) + ".txt", qmeas::toy_model(n),
                "two-group toy model, n = " + std::to_string(n));
  }
  const std::size_t qubits[2] = {6, 8};
  const std::size_t terms[2] = {50, 200};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto h = qmeas::random_structured_hamiltonian(qubits[i], terms[j],
                                                          kRandomSeeds[i][j]);
      ok &= write(dir + "/random_n" + std::to_string(qubits[i]) + "_L" +
                      std::to_string(terms[j]) + ".txt",
                  h, "random structured Hamiltonian, seed " +
                         std::to_string(kRandomSeeds[i][j]));
    }
  }
  // Small instance with a non-trivial allocation for coverage checks.
  ok &= write(dir + "/two_qubit.txt",
              qmeas::parse_hamiltonian("1.0 ZZ\n0.5 XI\n0.3 IX\n"),
              "two qubits, three terms");
  return ok ? 0 : 1;
}
