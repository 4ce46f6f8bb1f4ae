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

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcbrick/statevector.hpp"

namespace pcbrick {

enum class Pauli : std::uint8_t { X, Y, Z };

inline char to_char(Pauli p) { return "XYZ"[static_cast<int>(p)]; }

/// Real-weighted tensor product of Paulis; qubits not listed carry identity.
struct PauliString {
  double coefficient = 1.0;
  std::vector<std::pair<std::size_t, Pauli>> ops;

  PauliString() = default;
  PauliString(double c, std::vector<std::pair<std::size_t, Pauli>> o)
      : coefficient(c), ops(std::move(o)) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = i + 1; j < ops.size(); ++j) {
        if (ops[i].first == ops[j].first) {
          throw std::invalid_argument("PauliString: repeated qubit index");
        }
      }
    }
  }

  /// Qubits where the operator flips the bit (X or Y).
  std::uint64_t x_mask() const {
    std::uint64_t m = 0;
    for (auto [q, p] : ops)
      if (p != Pauli::Z) m |= std::uint64_t{1} << q;
    return m;
  }

  /// Qubits that contribute a (-1)^bit sign (Y or Z).
  std::uint64_t z_mask() const {
    std::uint64_t m = 0;
    for (auto [q, p] : ops)
      if (p != Pauli::X) m |= std::uint64_t{1} << q;
    return m;
  }

  int y_count() const {
    return static_cast<int>(std::count_if(ops.begin(), ops.end(),
                                          [](const auto& o) { return o.second == Pauli::Y; }));
  }

  std::size_t max_qubit() const {
    std::size_t m = 0;
    for (auto [q, p] : ops) m = std::max(m, q);
    return m;
  }

  /// e.g. "0.5*X0 Y1".
  std::string str() const {
    std::string s = std::to_string(coefficient) + "*";
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (i) s += ' ';
      s += to_char(ops[i].second);
      s += std::to_string(ops[i].first);
    }
    return s;
  }
};

/// P|i> = phase(i) |i ^ x_mask>; returns phase(i) for a precomputed string.
struct PauliAction {
  std::uint64_t x_mask;
  std::uint64_t z_mask;
  Complex y_phase;  // i^{#Y}

  explicit PauliAction(const PauliString& p) : x_mask(p.x_mask()), z_mask(p.z_mask()) {
    static constexpr Complex kPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    y_phase = kPow[p.y_count() % 4];
  }

  Complex phase(std::uint64_t i) const {
    return (std::popcount(i & z_mask) & 1) ? -y_phase : y_phase;
  }
};

inline void check_support(const Statevector& state, const PauliString& p) {
  if (!p.ops.empty() && p.max_qubit() >= state.num_qubits()) {
    throw std::out_of_range("PauliString " + p.str() + " acts outside the " +
                            std::to_string(state.num_qubits()) + "-qubit register");
  }
}

/// <psi|P|psi> for one string, including its coefficient.
inline double expectation(const Statevector& state, const PauliString& p) {
  check_support(state, p);
  const PauliAction act(p);
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    s += std::conj(state[i ^ act.x_mask]) * act.phase(i) * state[i];
  }
  return p.coefficient * s.real();
}

/// Exact sum_k c_k <psi|P_k|psi>.
inline double expectation(const Statevector& state, std::span<const PauliString> terms) {
  double e = 0.0;
  for (const auto& p : terms) e += expectation(state, p);
  return e;
}

/// Multinomial sample of `shots` computational-basis outcomes; entry i of the
/// result counts outcome i.
template <typename Rng>
std::vector<std::uint64_t> sample_counts(const Statevector& state, std::uint64_t shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
  std::vector<double> probs(state.dimension());
  for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(state[i]);
  std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
  std::vector<std::uint64_t> counts(state.dimension(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) ++counts[dist(rng)];
  return counts;
}

/// Rotates a copy of `state` so that measuring `p` becomes a Z-basis parity
/// measurement over p's support: H for X, S^dagger then H for Y.
inline Statevector rotate_to_measurement_basis(Statevector state, const PauliString& p) {
  for (auto [q, op] : p.ops) {
    if (op == Pauli::X) {
      state.apply(gates::hadamard(), q);
    } else if (op == Pauli::Y) {
      state.apply(gates::s_dagger(), q);
      state.apply(gates::hadamard(), q);
    }
  }
  return state;
}

/// Shot-based estimate of one string. Only the parity of each outcome matters,
/// so the number of even-parity shots is drawn directly as a binomial, which is
/// the exact marginal of the multinomial outcome histogram.
template <typename Rng>
double estimate_expectation(const Statevector& state, const PauliString& p, std::uint64_t shots,
                            Rng& rng) {
  if (shots < 1) throw std::invalid_argument("estimate_expectation: shots must be >= 1");
  check_support(state, p);
  if (p.ops.empty()) return p.coefficient;
  const Statevector rotated = rotate_to_measurement_basis(state, p);
  std::uint64_t mask = 0;
  for (auto [q, op] : p.ops) mask |= std::uint64_t{1} << q;
  double p_even = 0.0;
  for (std::size_t i = 0; i < rotated.dimension(); ++i) {
    if ((std::popcount(i & mask) & 1) == 0) p_even += std::norm(rotated[i]);
  }
  p_even = std::clamp(p_even, 0.0, 1.0);
  std::binomial_distribution<std::uint64_t> dist(shots, p_even);
  const auto even = static_cast<double>(dist(rng));
  const auto n = static_cast<double>(shots);
  return p.coefficient * (2.0 * even - n) / n;
}

/// Each string is measured independently with `shots` shots.
template <typename Rng>
double estimate_expectation(const Statevector& state, std::span<const PauliString> terms,
                            std::uint64_t shots, Rng& rng) {
  double e = 0.0;
  for (const auto& p : terms) e += estimate_expectation(state, p, shots, rng);
  return e;
}

}  // namespace pcbrick
