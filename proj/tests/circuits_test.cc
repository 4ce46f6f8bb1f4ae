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

#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "pcbrick/pcbrick.hpp"

using namespace pcbrick;

namespace {

std::vector<double> random_theta(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  return random_angles(n, rng);
}

}  // namespace

TEST(Fock, DimensionMatchesPascal) {
  EXPECT_EQ(fock_dimension(4, 2), 6u);
  EXPECT_EQ(fock_dimension(8, 3), 56u);
  for (int L = 0; L <= 40; ++L)
    for (int N = 0; N <= L; ++N) EXPECT_EQ(fock_dimension(L, N), oracle::binomial(L, N));
  EXPECT_EQ(fock_dimension(7, 0), 1u);
  EXPECT_THROW(fock_dimension(3, 4), std::invalid_argument);
  EXPECT_THROW(fock_dimension(3, -1), std::invalid_argument);
}

TEST(Fock, BasisIsSortedAndRanked) {
  for (int L = 1; L <= 10; ++L) {
    for (int N = 0; N <= L; ++N) {
      const auto basis = fock_basis(L, N);
      ASSERT_EQ(basis.size(), fock_dimension(L, N));
      for (std::size_t r = 0; r < basis.size(); ++r) {
        EXPECT_EQ(std::popcount(basis[r]), N);
        EXPECT_LT(basis[r], std::uint64_t{1} << L);
        if (r) EXPECT_LT(basis[r - 1], basis[r]);
        EXPECT_EQ(fock_rank(basis[r]), r);
      }
    }
  }
}

TEST(Circuits, LayerCount) {
  EXPECT_EQ(layer_count(4, 2), 2);
  EXPECT_EQ(layer_count(8, 3), 8);
  EXPECT_EQ(layer_count(2, 1), 2);
}

TEST(Circuits, InitialOccupation) {
  EXPECT_EQ(initial_occupation(8, 3), (1u << 1) | (1u << 4) | (1u << 6));
  EXPECT_EQ(initial_occupation(5, 0), 0u);
  EXPECT_EQ(initial_occupation(4, 2), (1u << 1) | (1u << 3));
  for (int L = 1; L <= 12; ++L)
    for (int N = 0; N <= L; ++N) EXPECT_EQ(std::popcount(initial_occupation(L, N)), N);
}

TEST(Circuits, ParameterAccounting) {
  const ParamCircuit a = build_brickwall(4, 2, PCGateKind::A);
  EXPECT_EQ(a.layers, 2);
  EXPECT_EQ(a.placements.size(), 6u);
  EXPECT_EQ(a.num_free_params, 12u);
  EXPECT_EQ(build_brickwall(4, 2, PCGateKind::B).num_free_params, 12u);
  EXPECT_EQ(build_brickwall(4, 2, PCGateKind::A, 3).num_free_params, 18u);
  EXPECT_EQ(build_brickwall(4, 2, PCGateKind::A, 4).num_free_params, 24u);
  EXPECT_EQ(build_brickwall(4, 2, PCGateKind::G).num_free_params, 24u);
}

TEST(Circuits, PlacementShapes) {
  for (int L = 2; L <= 12; ++L) {
    const ParamCircuit c = build_brickwall(L, L / 2, PCGateKind::B, 1);
    EXPECT_EQ(c.placements.size(), static_cast<std::size_t>(L - 1));
    for (const auto& p : c.placements) EXPECT_EQ(p.second, p.first + 1);
    if (L < 3) continue;
    const ParamCircuit e = build_brickwall_extended(L, L / 2, PCGateKind::B, 2);
    ASSERT_EQ(e.placements.size(), static_cast<std::size_t>(2 * L - 3));
    for (std::size_t k = L - 1; k < e.placements.size(); ++k) {
      EXPECT_EQ(e.placements[k].second, e.placements[k].first + 2);
    }
  }
  const ParamCircuit c = build_brickwall(5, 2, PCGateKind::A, 1);
  const std::vector<std::size_t> firsts = {0, 2, 1, 3};
  for (std::size_t k = 0; k < firsts.size(); ++k) EXPECT_EQ(c.placements[k].first, firsts[k]);
}

TEST(Circuits, ExtendedPatternL8) {
  const ParamCircuit c = build_brickwall_extended(8, 3, PCGateKind::A, 3);
  EXPECT_EQ(c.placements.size(), 20u);
  const std::vector<std::pair<std::size_t, std::size_t>> nnn = {{0, 2}, {3, 5}, {1, 3},
                                                                {4, 6}, {2, 4}, {5, 7}};
  for (std::size_t k = 0; k < nnn.size(); ++k) {
    EXPECT_EQ(c.placements[7 + k].first, nnn[k].first);
    EXPECT_EQ(c.placements[7 + k].second, nnn[k].second);
  }
  const ParamCircuit small = build_brickwall_extended(3, 1, PCGateKind::A, 2);
  ASSERT_EQ(small.placements.size(), 3u);
  EXPECT_EQ(small.placements[2].first, 0u);
  EXPECT_EQ(small.placements[2].second, 2u);
}

TEST(Circuits, SlotsAreContiguous) {
  const ParamCircuit c = build_brickwall_extended(6, 3, PCGateKind::G, 3);
  std::size_t next = 0;
  for (const auto& p : c.placements) {
    EXPECT_EQ(p.slot_begin, next);
    next += p.num_slots();
  }
  EXPECT_EQ(c.num_slots(), arity(PCGateKind::G) * c.placements.size());
}

TEST(Circuits, ZeroParamsWithBIsInitialState) {
  const ParamCircuit c = build_brickwall(6, 3, PCGateKind::B);
  const std::vector<double> zeros(c.num_free_params, 0.0);
  const Statevector s = bind(c, zeros);
  EXPECT_EQ(s[initial_occupation(6, 3)], Complex(1.0, 0.0));
}

TEST(Circuits, ConservationEndToEnd) {
  const std::vector<std::pair<int, int>> cases = {{4, 2}, {6, 3}, {8, 3}, {8, 4}};
  std::uint64_t seed = 0;
  for (auto [L, N] : cases) {
    for (PCGateKind k : kAllGateKinds) {
      for (bool ext : {false, true}) {
        const ParamCircuit c = ext ? build_brickwall_extended(L, N, k, 3)
                                   : build_brickwall(L, N, k, 3);
        const Statevector s = bind(c, random_theta(c.num_free_params, ++seed));
        EXPECT_LT(weight_outside_sector(s, N), 1e-12);
        EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-10);
      }
    }
  }
}

TEST(Circuits, DenseAndElementaryPathsAgree) {
  for (PCGateKind k : kAllGateKinds) {
    const ParamCircuit c = build_brickwall_extended(5, 2, k, 3);
    const auto theta = random_theta(c.num_free_params, 40 + static_cast<int>(k));
    const Statevector a = bind(c, theta, BindPath::kDense);
    const Statevector b = bind(c, theta, BindPath::kElementary);
    for (std::size_t i = 0; i < a.dimension(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-12);
  }
}

TEST(Circuits, BindMatchesKroneckerProduct) {
  const ParamCircuit c = build_brickwall(4, 2, PCGateKind::G);
  const auto theta = random_theta(c.num_free_params, 50);
  const auto slots = c.slot_values(theta);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v[initial_occupation(4, 2)] = 1.0;
  for (const auto& p : c.placements) {
    const GateMatrix2 g =
        gate_matrix(p.kind, std::span<const double>(slots.data() + p.slot_begin, 4));
    v = oracle::two_qubit_full(g, p.first, p.second, 4) * v;
  }
  const Statevector s = bind(c, theta);
  EXPECT_LT((v - oracle::as_vector(s)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Circuits, FixedTail) {
  const ParamCircuit full = build_brickwall(4, 2, PCGateKind::A, 3);
  const ParamCircuit c = with_free_params(full, 10, 0.25);
  EXPECT_EQ(c.num_free_params, 10u);
  const auto slots = c.slot_values(random_theta(10, 60));
  for (std::size_t k = 10; k < slots.size(); ++k) EXPECT_EQ(slots[k], 0.25);
  EXPECT_THROW(c.slot_values(random_theta(9, 60)), std::invalid_argument);
  EXPECT_THROW(with_free_params(full, 19), std::invalid_argument);
  EXPECT_EQ(trim_to_fock_dimension(full).num_free_params, 12u);  // d = 6 gates
}

TEST(Circuits, EqualParameterCountsAfterFixing) {
  for (int layers : {3, 5}) {
    const ParamCircuit nn = build_brickwall(8, 4, PCGateKind::A, layers);
    const ParamCircuit ex = build_brickwall_extended(8, 4, PCGateKind::A, layers);
    const std::size_t n = std::min(nn.num_slots(), ex.num_slots());
    EXPECT_EQ(with_free_params(nn, n).num_free_params, with_free_params(ex, n).num_free_params);
  }
}

TEST(Circuits, JsonRoundTrip) {
  const ParamCircuit c = with_free_params(build_brickwall_extended(6, 2, PCGateKind::B, 3), 20, 0.5);
  const auto j = to_json(c);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"L", "N", "kind", "layers", "extended", "placements",
                                            "free_params", "fixed_value"}));
  const ParamCircuit back = circuit_from_json(nlohmann::ordered_json::parse(j.dump()));
  EXPECT_EQ(to_json(back), j);
  auto bad = j;
  bad["placements"][0]["wires"] = {0, 0};
  EXPECT_THROW(circuit_from_json(bad), std::invalid_argument);
}

TEST(Circuits, RejectsBadShapes) {
  EXPECT_THROW(build_brickwall(1, 0, PCGateKind::A), std::invalid_argument);
  EXPECT_THROW(build_brickwall_extended(2, 1, PCGateKind::A), std::invalid_argument);
  EXPECT_THROW(build_brickwall(4, 5, PCGateKind::A), std::invalid_argument);
}
