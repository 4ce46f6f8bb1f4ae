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

// Brick-wall particle-conserving ansatz circuits and their flat parameter
// vectors.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcbrick/fock.hpp"
#include "pcbrick/pc_gates.hpp"
#include "pcbrick/statevector.hpp"

namespace pcbrick {

/// ceil(d_{N,L} / (L - 1)).
inline int layer_count(int num_sites, int num_particles) {
  if (num_sites < 2) throw std::invalid_argument("layer_count: need L >= 2");
  const std::uint64_t d = fock_dimension(num_sites, num_particles);
  const auto per_layer = static_cast<std::uint64_t>(num_sites - 1);
  return static_cast<int>((d + per_layer - 1) / per_layer);
}

/// Basis index with N bits spread evenly over L sites: bit floor((2k+1) L / 2N)
/// for k = 0..N-1.
inline std::uint64_t initial_occupation(int num_sites, int num_particles) {
  check_occupation(num_sites, num_particles);
  if (num_sites > static_cast<int>(kMaxQubits)) {
    throw std::invalid_argument("initial_occupation: L too large");
  }
  std::uint64_t mask = 0;
  int next_free = 0;
  for (int k = 0; k < num_particles; ++k) {
    int pos = static_cast<int>((2LL * k + 1) * num_sites / (2LL * num_particles));
    pos = std::clamp(std::max(pos, next_free), 0, num_sites - 1);
    mask |= std::uint64_t{1} << pos;
    next_free = pos + 1;
  }
  return mask;
}

/// One two-qubit gate in a circuit. Its parameters occupy slots
/// [slot_begin, slot_begin + arity(kind)).
struct Placement {
  PCGateKind kind;
  std::size_t first;
  std::size_t second;
  std::size_t slot_begin;

  std::size_t num_slots() const { return arity(kind); }
};

/// Ordered list of gate placements on L qubits starting from the initial
/// occupation with N particles. The first `num_free_params` slots are the
/// optimizer's parameters; the remaining ones are pinned to `fixed_value`.
struct ParamCircuit {
  int num_qubits = 0;
  int num_particles = 0;
  PCGateKind kind = PCGateKind::A;
  int layers = 0;
  bool extended = false;
  std::vector<Placement> placements;
  std::size_t num_free_params = 0;
  double fixed_value = 0.0;

  std::size_t num_slots() const {
    std::size_t n = 0;
    for (const auto& p : placements) n += p.num_slots();
    return n;
  }

  /// Free parameters followed by the fixed tail.
  std::vector<double> slot_values(std::span<const double> theta) const {
    if (theta.size() != num_free_params) {
      throw std::invalid_argument("expected " + std::to_string(num_free_params) +
                                  " parameters, got " + std::to_string(theta.size()));
    }
    std::vector<double> slots(num_slots(), fixed_value);
    std::copy(theta.begin(), theta.end(), slots.begin());
    return slots;
  }
};

namespace detail {

inline void add_placement(ParamCircuit& c, std::size_t first, std::size_t second) {
  c.placements.push_back({c.kind, first, second, c.num_slots()});
}

inline void add_nn_layer(ParamCircuit& c) {
  const auto l = static_cast<std::size_t>(c.num_qubits);
  for (std::size_t i = 0; i + 1 < l; i += 2) add_placement(c, i, i + 1);
  for (std::size_t i = 1; i + 1 < l; i += 2) add_placement(c, i, i + 1);
}

inline void add_nnn_layer(ParamCircuit& c) {
  const auto l = static_cast<std::size_t>(c.num_qubits);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t i = r; i + 2 < l; i += 3) add_placement(c, i, i + 2);
  }
}

inline ParamCircuit empty_circuit(int num_sites, int num_particles, PCGateKind kind, int layers,
                                  bool extended) {
  check_occupation(num_sites, num_particles);
  if (num_sites > static_cast<int>(kMaxQubits)) throw std::invalid_argument("L too large");
  if (layers < 0) throw std::invalid_argument("layers must be >= 0");
  ParamCircuit c;
  c.num_qubits = num_sites;
  c.num_particles = num_particles;
  c.kind = kind;
  c.layers = layers;
  c.extended = extended;
  return c;
}

}  // namespace detail

/// `layers` brick-wall layers; each is a half-layer on (i, i+1) for even i
/// followed by one for odd i. All slots are free.
inline ParamCircuit build_brickwall(int num_sites, int num_particles, PCGateKind kind,
                                    std::optional<int> layers = std::nullopt) {
  if (num_sites < 2) throw std::invalid_argument("build_brickwall: need L >= 2");
  const int n_layers = layers.value_or(layer_count(num_sites, num_particles));
  ParamCircuit c = detail::empty_circuit(num_sites, num_particles, kind, n_layers, false);
  for (int l = 0; l < n_layers; ++l) detail::add_nn_layer(c);
  c.num_free_params = c.num_slots();
  return c;
}

/// Alternating NN and NNN layers, starting with NN. An NNN layer has three
/// sub-layers r = 0, 1, 2 with gates on (i, i+2) for i = r (mod 3).
inline ParamCircuit build_brickwall_extended(int num_sites, int num_particles, PCGateKind kind,
                                             std::optional<int> layers = std::nullopt) {
  if (num_sites < 3) throw std::invalid_argument("build_brickwall_extended: need L >= 3");
  const int n_layers = layers.value_or(layer_count(num_sites, num_particles));
  ParamCircuit c = detail::empty_circuit(num_sites, num_particles, kind, n_layers, true);
  for (int l = 0; l < n_layers; ++l) {
    if (l % 2 == 0) {
      detail::add_nn_layer(c);
    } else {
      detail::add_nnn_layer(c);
    }
  }
  c.num_free_params = c.num_slots();
  return c;
}

/// Keeps the first `n` slots free and pins the rest to `fixed_value`.
inline ParamCircuit with_free_params(ParamCircuit c, std::size_t n, double fixed_value = 0.0) {
  if (n > c.num_slots()) {
    throw std::invalid_argument("with_free_params: circuit has only " +
                                std::to_string(c.num_slots()) + " slots");
  }
  c.num_free_params = n;
  c.fixed_value = fixed_value;
  return c;
}

/// Limits the free parameters to arity * min(#placements, d_{N,L}).
inline ParamCircuit trim_to_fock_dimension(ParamCircuit c, double fixed_value = 0.0) {
  const std::uint64_t d = fock_dimension(c.num_qubits, c.num_particles);
  const std::size_t gates = std::min<std::uint64_t>(c.placements.size(), d);
  return with_free_params(std::move(c), gates * arity(c.kind), fixed_value);
}

enum class BindPath { kDense, kElementary };

/// |psi(theta)> = U(theta) X^{occupation} |0...0>. A function object rather
/// than a function so that calls with std:: arguments never find std::bind.
struct BindFn {
  Statevector operator()(const ParamCircuit& c, std::span<const double> theta,
                         BindPath path = BindPath::kDense) const {
    const std::vector<double> slots = c.slot_values(theta);
    Statevector state(static_cast<std::size_t>(c.num_qubits),
                      initial_occupation(c.num_qubits, c.num_particles));
    for (const auto& p : c.placements) {
      const std::span<const double> params(slots.data() + p.slot_begin, p.num_slots());
      if (path == BindPath::kDense) {
        state.apply(gate_matrix(p.kind, params), p.first, p.second);
      } else {
        const std::array<std::size_t, 2> map = {p.first, p.second};
        apply(state, decompose(p.kind, params).remapped(map, state.num_qubits()));
      }
    }
    return state;
  }
};
inline constexpr BindFn bind{};

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json to_json(const ParamCircuit& c) {
  nlohmann::ordered_json j;
  j["L"] = c.num_qubits;
  j["N"] = c.num_particles;
  j["kind"] = std::string(to_string(c.kind));
  j["layers"] = c.layers;
  j["extended"] = c.extended;
  auto& ps = j["placements"] = nlohmann::ordered_json::array();
  for (const auto& p : c.placements) {
    nlohmann::ordered_json slots = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < p.num_slots(); ++s) slots.push_back(p.slot_begin + s);
    ps.push_back({{"kind", std::string(to_string(p.kind))},
                  {"wires", {p.first, p.second}},
                  {"slots", std::move(slots)}});
  }
  j["free_params"] = c.num_free_params;
  j["fixed_value"] = c.fixed_value;
  return j;
}

/// Inverse of to_json. Rejects inconsistent slot numbering or wires.
inline ParamCircuit circuit_from_json(const nlohmann::ordered_json& j) {
  ParamCircuit c;
  c.num_qubits = j.at("L").get<int>();
  c.num_particles = j.at("N").get<int>();
  check_occupation(c.num_qubits, c.num_particles);
  c.kind = parse_gate_kind(j.at("kind").get<std::string>());
  c.layers = j.at("layers").get<int>();
  c.extended = j.at("extended").get<bool>();
  for (const auto& pj : j.at("placements")) {
    Placement p{parse_gate_kind(pj.at("kind").get<std::string>()),
                pj.at("wires").at(0).get<std::size_t>(), pj.at("wires").at(1).get<std::size_t>(),
                c.num_slots()};
    const auto& slots = pj.at("slots");
    if (slots.size() != p.num_slots()) throw std::invalid_argument("circuit JSON: slot count");
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (slots[s].get<std::size_t>() != p.slot_begin + s) {
        throw std::invalid_argument("circuit JSON: slots must be consecutive");
      }
    }
    if (p.first == p.second || std::max(p.first, p.second) >= static_cast<std::size_t>(c.num_qubits)) {
      throw std::invalid_argument("circuit JSON: invalid wires");
    }
    c.placements.push_back(p);
  }
  c.num_free_params = j.at("free_params").get<std::size_t>();
  if (c.num_free_params > c.num_slots()) throw std::invalid_argument("circuit JSON: free_params");
  c.fixed_value = j.at("fixed_value").get<double>();
  return c;
}

}  // namespace pcbrick
