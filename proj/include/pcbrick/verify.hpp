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

// Self-check suite for the gate constructions and circuit builders. Each
// check reports its largest residual against a tolerance.

#pragma once

#include <array>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcbrick/circuits.hpp"
#include "pcbrick/pc_gates.hpp"
#include "pcbrick/rng.hpp"
#include "pcbrick/tolerances.hpp"

namespace pcbrick {

/// Where the checks get their gates from. Tests swap in a faulty provider.
struct GateProvider {
  std::function<GateMatrix2(PCGateKind, std::span<const double>)> matrix =
      [](PCGateKind k, std::span<const double> p) { return gate_matrix(k, p); };
  std::function<ElementaryGateSequence(PCGateKind, std::span<const double>)> sequence =
      [](PCGateKind k, std::span<const double> p) { return decompose(k, p); };
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::array<std::size_t, 3> cnot_counts{};  // A, B, G
  std::size_t long_range_cnots = 0;
  std::size_t swap_network_cnots = 0;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Random element of U(2): e^{i a} times a Haar SU(2) element.
template <typename Rng>
GateMatrix1 random_unitary1(Rng& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  double q[4];
  double n = 0.0;
  for (double& v : q) {
    v = normal(rng);
    n += v * v;
  }
  n = std::sqrt(n);
  const Complex p(q[0] / n, q[1] / n), r(q[2] / n, q[3] / n);
  GateMatrix1 m;
  m << p, r, -std::conj(r), std::conj(p);
  return std::polar(1.0, phase(rng)) * m;
}

/// Random particle-conserving unitary: independent phases on |00>, |11>
/// and a random U(2) on the central block.
template <typename Rng>
GateMatrix2 random_pc_unitary(Rng& rng) {
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  GateMatrix2 u = GateMatrix2::Zero();
  u(0, 0) = std::polar(1.0, phase(rng));
  u(3, 3) = std::polar(1.0, phase(rng));
  u.block<2, 2>(1, 1) = random_unitary1(rng);
  return u;
}

template <typename Rng>
std::vector<double> random_angles(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

/// Runs every check. `draws` random parameter sets per gate kind.
inline VerifyReport run_gate_checks(const GateProvider& gp = {}, std::uint64_t seed = 0,
                                    int draws = 100) {
  VerifyReport rep;
  CounterRng rng(derive_seed(seed, {0x6A7E}));
  auto add = [&](std::string name, double residual, double tol) {
    rep.checks.push_back({std::move(name), residual, tol, residual < tol});
  };
  const GateMatrix2 n2 = gates::number_operator2();

  for (PCGateKind k : kAllGateKinds) {
    const std::string kn(to_string(k));
    double unit = 0.0, conserve = 0.0, recon = 0.0, recon_unit = 0.0;
    for (int t = 0; t < draws; ++t) {
      const auto p = random_angles(arity(k), rng);
      const GateMatrix2 m = gp.matrix(k, p);
      unit = std::max(unit, unitarity_residual(m));
      conserve = std::max(conserve, commutator_residual(m, n2));
      const GateMatrix2 r = reconstruct_gate(gp.sequence(k, p));
      recon = std::max(recon, max_abs_diff(r, m));
      recon_unit = std::max(recon_unit, unitarity_residual(r));
    }
    add("gate " + kn + " unitary", unit, tol::kUnitarity);
    add("gate " + kn + " conserves particle number", conserve, tol::kExact);
    add("gate " + kn + " decomposition reconstructs closed form", recon, tol::kExact);
    add("gate " + kn + " decomposition unitary", recon_unit, tol::kUnitarity);
    const std::vector<double> zeros(arity(k), 0.3);
    rep.cnot_counts[static_cast<std::size_t>(k)] = gp.sequence(k, zeros).cnot_count();
  }

  {
    const GateMatrix2 f = fusion_gate();
    double r = max_abs_diff(GateMatrix2(f * f), GateMatrix2(GateMatrix2::Identity()));
    // |11> (local index 3) -> |10> (local index 2).
    r = std::max(r, std::abs(f(2, 3) - 1.0));
    add("fusion gate is an involution mapping |11> to |10>", r, tol::kExact);
  }

  {
    double parity = 0.0, pattern = 0.0;
    for (int t = 0; t < draws; ++t) {
      const GateMatrix1 q0 = random_unitary1(rng), q1 = random_unitary1(rng);
      const GateMatrix2 z = z2_generic_gate(q0, q1);
      parity = std::max(parity, commutator_residual(z, gates::parity2()));
      GateMatrix2 expect = GateMatrix2::Zero();
      expect(0, 0) = q0(0, 0);
      expect(3, 0) = q0(1, 0);
      expect(0, 3) = q0(0, 1);
      expect(3, 3) = q0(1, 1);
      expect(1, 1) = q1(0, 0);
      expect(2, 1) = q1(1, 0);
      expect(1, 2) = q1(0, 1);
      expect(2, 2) = q1(1, 1);
      pattern = std::max(pattern, max_abs_diff(z, expect));
    }
    add("Z2 generic gate commutes with parity", parity, tol::kExact);
    add("Z2 generic gate matches block pattern", pattern, tol::kExact);
  }

  {
    double r = 0.0;
    for (int t = 0; t < draws; ++t) {
      const auto p = random_angles(2, rng);
      r = std::max(r, max_abs_diff(z2_generic_gate(gates::identity1(), v_block(p[0], p[1])),
                                   gp.matrix(PCGateKind::A, p)));
    }
    add("gate A equals Z2 generic gate with blocks (I, V)", r, tol::kExact);
  }

  {
    double r = 0.0;
    for (int t = 0; t < draws; ++t) {
      const auto p = random_angles(2, rng);
      const std::size_t width = 3 + static_cast<std::size_t>(t % 3);
      const std::size_t i = static_cast<std::size_t>(t) % (width - 2);
      const std::size_t j = i + 2 + static_cast<std::size_t>(t / 3) % (width - i - 2);
      const std::array<std::size_t, 2> map = {i, j};
      const Eigen::MatrixXcd direct =
          reconstruct_unitary(gp.sequence(PCGateKind::A, p).remapped(map, width));
      const Eigen::MatrixXcd swapped =
          reconstruct_unitary(swap_network_gate(PCGateKind::A, p, i, j, width));
      r = std::max(r, (direct - swapped).cwiseAbs().maxCoeff());
    }
    add("long-range gate A equals SWAP-network construction", r, tol::kExact);
    const std::vector<double> p = {0.4, 1.3};
    rep.long_range_cnots = long_range_gate(PCGateKind::A, p, 0, 2, 3).cnot_count();
    rep.swap_network_cnots = swap_network_gate(PCGateKind::A, p, 0, 2, 3).cnot_count();
  }

  {
    double r = 0.0;
    for (int t = 0; t < 5 * draws; ++t) {
      const GateMatrix2 u = random_pc_unitary(rng);
      r = std::max(r, max_abs_diff(reconstruct(canonicalize_pc_unitary(u)), u));
    }
    add("canonical form round-trips random particle-conserving unitaries", r, 1e-9);
  }

  {
    double r = 0.0;
    for (int t = 0; t < draws; ++t) {
      for (PCGateKind k : {PCGateKind::A, PCGateKind::B}) {
        const GateMatrix2 m = gp.matrix(k, random_angles(2, rng));
        if (!is_particle_conserving(m)) {
          r = 1.0;
          continue;
        }
        try {
          r = std::max(r, max_abs_diff(reconstruct(canonicalize_pc_unitary(m)), m));
        } catch (const std::invalid_argument&) {
          r = 1.0;
        }
      }
    }
    add("gates A and B are instances of G", r, tol::kUnitarity);
  }

  {
    double r = 0.0;
    const int sizes[4][2] = {{4, 2}, {6, 3}, {8, 3}, {8, 4}};
    for (const auto& ln : sizes) {
      for (PCGateKind k : kAllGateKinds) {
        for (bool ext : {false, true}) {
          const ParamCircuit c = ext ? build_brickwall_extended(ln[0], ln[1], k, 3)
                                     : build_brickwall(ln[0], ln[1], k, 3);
          const auto theta = random_angles(c.num_free_params, rng);
          r = std::max(r, weight_outside_sector(bind(c, theta), ln[1]));
        }
      }
    }
    add("circuits stay in the particle-number sector", r, tol::kExact);
  }

  {
    double r = 0.0;
    for (PCGateKind k : kAllGateKinds) {
      const ParamCircuit c = build_brickwall(4, 2, k);
      const auto theta = random_angles(c.num_free_params, rng);
      const Statevector a = bind(c, theta, BindPath::kDense);
      const Statevector b = bind(c, theta, BindPath::kElementary);
      for (std::size_t i = 0; i < a.dimension(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
    }
    add("dense and elementary circuit paths agree", r, tol::kExact);
  }

  {
    double bad = 0.0;
    for (int l = 2; l <= 12; ++l) {
      const ParamCircuit nn = build_brickwall(l, l / 2, PCGateKind::A, 1);
      bad += std::abs(static_cast<double>(nn.placements.size()) - (l - 1));
      if (l >= 3) {
        const ParamCircuit ex = build_brickwall_extended(l, l / 2, PCGateKind::A, 2);
        bad += std::abs(static_cast<double>(ex.placements.size()) - (2 * l - 3));
      }
    }
    add("layer placement counts", bad, 0.5);
  }

  {
    double bad = 0.0;
    for (int layers = 2; layers <= 4; ++layers) {
      for (PCGateKind k : {PCGateKind::A, PCGateKind::B}) {
        bad += std::abs(static_cast<double>(build_brickwall(4, 2, k, layers).num_free_params) -
                        6.0 * layers);
      }
    }
    bad += std::abs(static_cast<double>(build_brickwall(4, 2, PCGateKind::G).num_free_params) - 24.0);
    add("free-parameter accounting at L=4, N=2", bad, 0.5);
  }
  return rep;
}

inline void print_report(std::ostream& os, const VerifyReport& rep) {
  char buf[256];
  for (const auto& c : rep.checks) {
    std::snprintf(buf, sizeof buf, "%-4s  %-64s  max residual %.3e  (tol %.0e)\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.max_residual, c.tolerance);
    os << buf;
  }
  os << "CNOT counts: A=" << rep.cnot_counts[0] << " B=" << rep.cnot_counts[1]
     << " G=" << rep.cnot_counts[2] << "\n";
  os << "long-range A(0,2) on 3 qubits: " << rep.long_range_cnots << " CNOTs (SWAP network: "
     << rep.swap_network_cnots << ")\n";
  std::size_t failed = 0;
  for (const auto& c : rep.checks) failed += !c.pass;
  os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
}

}  // namespace pcbrick
