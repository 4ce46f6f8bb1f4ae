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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "pcbrick/pcbrick.hpp"

using namespace pcbrick;

namespace {

constexpr double kPi = std::numbers::pi;

double diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Places the 2x2 blocks by hand in the Z2 pattern: charge 0 on the corners
// {|00>, |11>}, charge 1 on the centre {|01>, |10>}.
GateMatrix2 z2_pattern(const GateMatrix1& q0, const GateMatrix1& q1) {
  GateMatrix2 z = GateMatrix2::Zero();
  const int even[2] = {0, 3}, odd[2] = {1, 2};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      z(even[r], even[c]) = q0(r, c);
      z(odd[r], odd[c]) = q1(r, c);
    }
  }
  return z;
}

}  // namespace

TEST(Fusion, Involution) {
  const GateMatrix2 f = fusion_gate();
  EXPECT_EQ(diff(f * f, GateMatrix2::Identity()), 0.0);
}

TEST(Fusion, BasisAction) {
  // local index 2*first + second
  const GateMatrix2 f = fusion_gate();
  EXPECT_EQ(f(2, 3), Complex(1.0, 0.0));  // |11> -> |10>: charge 0, degeneracy 1
  EXPECT_EQ(f(1, 1), Complex(1.0, 0.0));  // |01> unchanged, control clear
  Statevector s(2, 0b11);
  s.apply(f, 0, 1);
  EXPECT_EQ(s[0b01], Complex(1.0, 0.0));  // first wire (qubit 0) kept
}

TEST(ChargeControlled, IdentityBlocks) {
  EXPECT_EQ(diff(charge_controlled_op(gates::identity1(), gates::identity1()),
                 GateMatrix2::Identity()),
            0.0);
}

TEST(ChargeControlled, ControlledX) {
  const GateMatrix2 q = charge_controlled_op(gates::identity1(), gates::pauli_x());
  GateMatrix2 expect = GateMatrix2::Zero();
  expect(0, 0) = expect(2, 2) = 1.0;
  expect(1, 3) = expect(3, 1) = 1.0;
  EXPECT_EQ(diff(q, expect), 0.0);
}

TEST(ChargeControlled, RandomBlocksAreUnitaryAndBlockDiagonal) {
  CounterRng rng(1);
  GateMatrix2 proj = GateMatrix2::Zero();
  proj(1, 1) = proj(3, 3) = 1.0;  // |1><1| on the charge wire
  for (int k = 0; k < 50; ++k) {
    const GateMatrix2 q = charge_controlled_op(random_unitary1(rng), random_unitary1(rng));
    EXPECT_LT(unitarity_residual(q), 1e-12);
    EXPECT_LT(commutator_residual(q, proj), 1e-12);
  }
  GateMatrix1 bad = GateMatrix1::Identity();
  bad(0, 0) = 2.0;
  EXPECT_THROW(charge_controlled_op(bad, gates::identity1()), std::invalid_argument);
}

TEST(Z2Gate, MatchesPatternAndCommutesWithParity) {
  EXPECT_EQ(diff(z2_generic_gate(gates::identity1(), gates::identity1()), GateMatrix2::Identity()),
            0.0);
  CounterRng rng(2);
  for (int k = 0; k < 50; ++k) {
    const GateMatrix1 q0 = random_unitary1(rng), q1 = random_unitary1(rng);
    const GateMatrix2 z = z2_generic_gate(q0, q1);
    EXPECT_LT(diff(z, z2_pattern(q0, q1)), 1e-12);
    EXPECT_LT(commutator_residual(z, gates::parity2()), 1e-12);
  }
}

TEST(Z2Gate, GateAFromVBlock) {
  for (double theta : {0.0, 0.4, 1.2, -2.5}) {
    for (double phi : {0.0, 0.9, -1.7}) {
      const GateMatrix2 z = z2_generic_gate(gates::identity1(), v_block(theta, phi));
      EXPECT_LT(diff(z, gate_matrix(PCGateKind::A, {theta, phi})), 1e-12);
    }
  }
}

TEST(GateMatrix, SpecialValues) {
  GateMatrix2 a0 = GateMatrix2::Identity();
  a0(1, 1) = a0(2, 2) = 0.0;
  a0(1, 2) = a0(2, 1) = 1.0;
  EXPECT_LT(diff(gate_matrix(PCGateKind::A, {0.0, 0.0}), a0), 1e-15);
  EXPECT_LT(diff(gate_matrix(PCGateKind::B, {0.0, 0.0}), GateMatrix2::Identity()), 1e-15);
  EXPECT_LT(diff(gate_matrix(PCGateKind::G, {0.0, 0.0, 0.0, 0.0}), GateMatrix2::Identity()),
            1e-15);
  GateMatrix2 d = GateMatrix2::Identity();
  d(2, 2) = -1.0;
  for (double phi : {0.0, 1.0, -2.2}) {
    EXPECT_LT(diff(gate_matrix(PCGateKind::A, {kPi / 2, phi}), d), 1e-15);
  }
}

TEST(GateMatrix, ArityChecked) {
  EXPECT_THROW(gate_matrix(PCGateKind::A, {1.0}), std::invalid_argument);
  EXPECT_THROW(gate_matrix(PCGateKind::G, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(decompose(PCGateKind::B, {1.0, 2.0, 3.0}), std::invalid_argument);
  EXPECT_EQ(parse_gate_kind("g"), PCGateKind::G);
  EXPECT_THROW(parse_gate_kind("C"), std::invalid_argument);
}

TEST(GateMatrix, UnitaryAndConserving) {
  CounterRng rng(3);
  const GateMatrix2 n2 = gates::number_operator2();
  for (PCGateKind k : kAllGateKinds) {
    for (int t = 0; t < 100; ++t) {
      const GateMatrix2 m = gate_matrix(k, random_angles(arity(k), rng));
      EXPECT_LT(unitarity_residual(m), 1e-10);
      EXPECT_LT(commutator_residual(m, n2), 1e-12);
      EXPECT_TRUE(is_particle_conserving(m));
    }
  }
}

TEST(Decompose, ReconstructsClosedForm) {
  CounterRng rng(4);
  for (PCGateKind k : kAllGateKinds) {
    for (int t = 0; t < 100; ++t) {
      const auto p = random_angles(arity(k), rng);
      const ElementaryGateSequence seq = decompose(k, p);
      const GateMatrix2 r = reconstruct_gate(seq);
      EXPECT_LT(diff(r, gate_matrix(k, p)), 1e-12) << to_string(k);
      EXPECT_LT(unitarity_residual(r), 1e-10);
    }
  }
}

TEST(Decompose, CnotCounts) {
  EXPECT_EQ(decompose(PCGateKind::A, {0.3, 0.2}).cnot_count(), 3u);
  EXPECT_EQ(decompose(PCGateKind::B, {0.3, 0.2}).cnot_count(), 4u);
  EXPECT_EQ(decompose(PCGateKind::G, {0.1, 0.3, 0.2, 0.4}).cnot_count(), 4u);
}

TEST(Decompose, StateApplicationMatchesReconstruction) {
  CounterRng rng(5);
  const auto p = random_angles(4, rng);
  const ElementaryGateSequence seq = decompose(PCGateKind::G, p);
  const Eigen::MatrixXcd u = reconstruct_unitary(seq);
  for (std::uint64_t b = 0; b < 4; ++b) {
    Statevector s(2, b);
    apply(s, seq);
    for (std::uint64_t r = 0; r < 4; ++r) EXPECT_LT(std::abs(s[r] - u(r, b)), 1e-12);
  }
}

TEST(Elementary, GenericOneQubit) {
  ElementaryGate g{ElementaryKind::GENERIC_1Q, {0, 0}, {0.3, 1.1, -0.4, 2.0}};
  const GateMatrix1 expect = std::polar(1.0, 0.3) * gates::rz(1.1) * gates::ry(-0.4) * gates::rz(2.0);
  EXPECT_LT(diff(one_qubit_matrix(g), expect), 1e-15);
}

TEST(Elementary, EmbedMatchesKronecker) {
  ElementaryGateSequence seq(3);
  seq.rx(1, 0.7).cnot(2, 0).phase(0, 0.4);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(8, 8);
  expect = oracle::one_qubit_full(gates::rx(0.7), 1, 3) * expect;
  // CNOT with control 2, target 0 is the local gate on the ordered pair (2, 0).
  expect = oracle::two_qubit_full(gates::cnot(), 2, 0, 3) * expect;
  expect = oracle::one_qubit_full(gates::phase(0.4), 0, 3) * expect;
  EXPECT_LT(diff(reconstruct_unitary(seq), expect), 1e-14);
}

TEST(Elementary, WireChecks) {
  ElementaryGateSequence seq(2);
  EXPECT_THROW(seq.cnot(0, 0), std::invalid_argument);
  EXPECT_THROW(seq.rz(2, 0.1), std::out_of_range);
}

TEST(LongRange, LeavesChargeZeroEndsAlone) {
  const std::vector<double> p = {0.8, -0.3};
  const ElementaryGateSequence seq = long_range_gate(PCGateKind::A, p, 0, 2, 3);
  EXPECT_EQ(seq.cnot_count(), 3u);
  Statevector s(3, 0b010);
  apply(s, seq);
  EXPECT_NEAR(std::abs(s[0b010] - Complex(1.0, 0.0)), 0.0, 1e-12);
}

TEST(LongRange, MatchesSwapNetwork) {
  CounterRng rng(6);
  for (PCGateKind k : kAllGateKinds) {
    for (std::size_t width = 3; width <= 5; ++width) {
      for (std::size_t i = 0; i + 2 < width; ++i) {
        for (std::size_t j = i + 2; j < width; ++j) {
          const auto p = random_angles(arity(k), rng);
          const auto direct = reconstruct_unitary(long_range_gate(k, p, i, j, width));
          const auto swapped = reconstruct_unitary(swap_network_gate(k, p, i, j, width));
          EXPECT_LT(diff(direct, swapped), 1e-12);
          // and both equal the closed form placed on (i, j)
          EXPECT_LT(diff(direct, oracle::two_qubit_full(gate_matrix(k, p), i, j, width)), 1e-12);
        }
      }
    }
  }
  const std::vector<double> p = {0.1, 0.2};
  EXPECT_EQ(swap_network_gate(PCGateKind::A, p, 0, 2, 3).cnot_count(), 9u);
}

TEST(Canonicalize, AlreadyCanonical) {
  const std::vector<double> p = {0.3, 0.7, -1.1, 0.4};
  const GateMatrix2 u = gate_matrix(PCGateKind::G, p);
  const PCCanonicalForm f = canonicalize_pc_unitary(u);
  EXPECT_NEAR(std::abs(std::remainder(f.omega1, 2 * kPi)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(std::remainder(f.omega2, 2 * kPi)), 0.0, 1e-12);
  EXPECT_LT(diff(reconstruct(f), u), 1e-12);
}

TEST(Canonicalize, DiagonalPhases) {
  GateMatrix2 u = GateMatrix2::Identity();
  u(0, 0) = std::polar(1.0, kPi / 3);
  u(3, 3) = std::polar(1.0, -kPi / 5);
  const PCCanonicalForm f = canonicalize_pc_unitary(u);
  EXPECT_LT(diff(reconstruct(f), u), 1e-12);
  EXPECT_GE(f.theta, 0.0);
  EXPECT_LE(f.theta, kPi / 2);
}

TEST(Canonicalize, RandomRoundTrip) {
  CounterRng rng(7);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const GateMatrix2 u = random_pc_unitary(rng);
    const PCCanonicalForm f = canonicalize_pc_unitary(u);
    worst = std::max(worst, diff(reconstruct(f), u));
    EXPECT_GE(f.theta, 0.0);
    EXPECT_LE(f.theta, kPi / 2 + 1e-15);
    for (double a : {f.omega1, f.omega2, f.alpha, f.phi1, f.phi2}) {
      EXPECT_GT(a, -kPi - 1e-15);
      EXPECT_LE(a, kPi + 1e-15);
    }
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Canonicalize, AAndBAreInstancesOfG) {
  CounterRng rng(8);
  for (PCGateKind k : {PCGateKind::A, PCGateKind::B}) {
    for (int t = 0; t < 100; ++t) {
      const GateMatrix2 u = gate_matrix(k, random_angles(2, rng));
      EXPECT_LT(diff(reconstruct(canonicalize_pc_unitary(u)), u), 1e-9);
    }
  }
}

TEST(Canonicalize, RejectsNonConserving) {
  EXPECT_THROW(canonicalize_pc_unitary(gates::cnot()), std::invalid_argument);
}

TEST(Verify, SuitePassesAndNamesInjectedFault) {
  const VerifyReport rep = run_gate_checks({}, 0, 20);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(rep.cnot_counts[0], 3u);
  EXPECT_EQ(rep.long_range_cnots, 3u);
  EXPECT_EQ(rep.swap_network_cnots, 9u);

  GateProvider bad;
  bad.matrix = [](PCGateKind k, std::span<const double> p) {
    GateMatrix2 m = gate_matrix(k, p);
    if (k == PCGateKind::B) m(1, 2) = -m(1, 2);
    return m;
  };
  const VerifyReport broken = run_gate_checks(bad, 0, 20);
  EXPECT_FALSE(broken.all_pass());
  bool named = false;
  for (const auto& c : broken.checks)
    if (!c.pass && c.name.find("gate B") != std::string::npos) named = true;
  EXPECT_TRUE(named);
}
