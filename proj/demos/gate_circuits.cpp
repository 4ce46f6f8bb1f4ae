// Copyright 2026 The pcbrick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Elementary-gate circuits for the three particle-conserving gates and a
// long-range A gate, checked against their closed-form matrices.

#include <cstdio>
#include <vector>

#include "pcbrick/pcbrick.hpp"

int main() {
  using namespace pcbrick;
  const std::vector<std::vector<double>> params = {{0.4, 1.1}, {0.4, 1.1}, {0.2, 0.4, 1.1, -0.7}};
  for (PCGateKind k : kAllGateKinds) {
    const auto& p = params[static_cast<int>(k)];
    const ElementaryGateSequence seq = decompose(k, p);
    const double err = max_abs_diff(reconstruct_gate(seq), gate_matrix(k, p));
    std::printf("gate %s: %zu elementary gates, %zu CNOTs, max error %.1e\n",
                std::string(to_string(k)).c_str(), seq.size(), seq.cnot_count(), err);
    for (const auto& g : seq.gates()) {
      std::printf("  %-6s", std::string(to_string(g.kind)).c_str());
      for (std::size_t w = 0; w < g.num_wires(); ++w) std::printf(" q%zu", g.wires[w]);
      for (double a : g.params) std::printf(" %+.4f", a);
      std::printf("\n");
    }
  }

  // A on qubits (0, 3) of a 4-qubit register, without SWAPs.
  const std::vector<double> p = {0.4, 1.1};
  const auto direct = long_range_gate(PCGateKind::A, p, 0, 3, 4);
  const auto swapped = swap_network_gate(PCGateKind::A, p, 0, 3, 4);
  std::printf("long-range A(0,3): %zu CNOTs, SWAP version %zu CNOTs, difference %.1e\n",
              direct.cnot_count(), swapped.cnot_count(),
              max_abs_diff(reconstruct_unitary(direct), reconstruct_unitary(swapped)));

  // Any particle-conserving unitary is a phase layer times G.
  CounterRng rng(3);
  const GateMatrix2 u = random_pc_unitary(rng);
  const PCCanonicalForm f = canonicalize_pc_unitary(u);
  std::printf("canonical form: omega = (%.4f, %.4f), G(%.4f, %.4f, %.4f, %.4f), error %.1e\n",
              f.omega1, f.omega2, f.alpha, f.theta, f.phi1, f.phi2,
              max_abs_diff(reconstruct(f), u));
  return 0;
}
