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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcbrick/gates.hpp"

namespace pcbrick {

// Bit convention used throughout the library: qubit i is bit i of the basis
// index (little-endian), so basis index = sum_i n_i 2^i. In circuit drawings
// the top wire is qubit 0.

inline constexpr std::size_t kMaxQubits = 30;

/// Dense pure state over L qubits.
class Statevector {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit Statevector(std::size_t num_qubits) : Statevector(num_qubits, 0) {}

  /// Computational basis state |index>.
  Statevector(std::size_t num_qubits, std::uint64_t index) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw std::invalid_argument("Statevector: num_qubits must be in [1, 30]");
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    if (index >= amps_.size()) {
      throw std::out_of_range("Statevector: basis index out of range");
    }
    amps_[index] = 1.0;
  }

  /// Takes ownership of raw amplitudes; length must be a power of two. The
  /// vector is used as given (no normalization).
  static Statevector from_amplitudes(std::vector<Complex> amps) {
    if (amps.size() < 2 || !std::has_single_bit(amps.size())) {
      throw std::invalid_argument("Statevector: amplitude count must be 2^L with L >= 1");
    }
    Statevector s(static_cast<std::size_t>(std::countr_zero(amps.size())));
    s.amps_ = std::move(amps);
    return s;
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  void normalize() {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) throw std::domain_error("Statevector: cannot normalize the zero vector");
    for (auto& a : amps_) a /= n;
  }

  /// Applies `gate` to qubit `q` in place.
  void apply(const GateMatrix1& gate, std::size_t q) {
    check_qubit(q);
    debug_check_unitary(gate);
    const std::size_t stride = std::size_t{1} << q;
    const Complex g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        Complex& a0 = amps_[base + off];
        Complex& a1 = amps_[base + off + stride];
        const Complex v0 = a0, v1 = a1;
        a0 = g00 * v0 + g01 * v1;
        a1 = g10 * v0 + g11 * v1;
      }
    }
  }

  /// Applies `gate` to the ordered pair (first, second) in place. The qubits
  /// need not be adjacent.
  void apply(const GateMatrix2& gate, std::size_t first, std::size_t second) {
    check_qubit(first);
    check_qubit(second);
    if (first == second) {
      throw std::invalid_argument("Statevector: two-qubit gate needs distinct qubits");
    }
    debug_check_unitary(gate);
    const std::size_t lo = std::min(first, second), hi = std::max(first, second);
    const std::size_t bit_first = std::size_t{1} << first;
    const std::size_t bit_second = std::size_t{1} << second;
    const std::size_t quarter = amps_.size() >> 2;
    for (std::size_t k = 0; k < quarter; ++k) {
      const std::size_t i00 = insert_zero_bit(insert_zero_bit(k, lo), hi);
      const std::size_t idx[4] = {i00, i00 | bit_second, i00 | bit_first,
                                  i00 | bit_first | bit_second};
      const Complex v[4] = {amps_[idx[0]], amps_[idx[1]], amps_[idx[2]], amps_[idx[3]]};
      for (int r = 0; r < 4; ++r) {
        amps_[idx[r]] = gate(r, 0) * v[0] + gate(r, 1) * v[1] + gate(r, 2) * v[2] +
                        gate(r, 3) * v[3];
      }
    }
  }

  /// Flips qubit `q` (Pauli X without the matrix multiply).
  void flip(std::size_t q) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & bit) == 0) std::swap(amps_[i], amps_[i | bit]);
    }
  }

 private:
  static std::size_t insert_zero_bit(std::size_t x, std::size_t pos) {
    const std::size_t low = x & ((std::size_t{1} << pos) - 1);
    return ((x >> pos) << (pos + 1)) | low;
  }

  void check_qubit(std::size_t q) const {
    if (q >= num_qubits_) {
      throw std::out_of_range("Statevector: qubit " + std::to_string(q) + " out of range for " +
                              std::to_string(num_qubits_) + " qubits");
    }
  }

  template <typename M>
  static void debug_check_unitary([[maybe_unused]] const M& gate) {
#ifdef PCBRICK_DEBUG_CHECKS
    if (!is_unitary(gate)) throw std::invalid_argument("Statevector: gate is not unitary");
#endif
  }

  std::size_t num_qubits_;
  std::vector<Complex> amps_;
};

/// Returns (I x ... x gate x ... x I)|state>.
inline Statevector apply_one_qubit_gate(Statevector state, const GateMatrix1& gate,
                                        std::size_t qubit) {
  state.apply(gate, qubit);
  return state;
}

/// Returns the state with `gate` applied on (qubit_a, qubit_b); qubit_a is the
/// high bit of the gate's local 4x4 index.
inline Statevector apply_two_qubit_gate(Statevector state, const GateMatrix2& gate,
                                        std::size_t qubit_a, std::size_t qubit_b) {
  state.apply(gate, qubit_a, qubit_b);
  return state;
}

/// <a|b>, conjugate-linear in `a`.
inline Complex inner_product(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner_product: qubit count mismatch");
  }
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Hamming weight of a basis index, i.e. its particle number.
inline int particle_number(std::uint64_t index) { return std::popcount(index); }

/// Total probability on basis states whose Hamming weight differs from `n`.
inline double weight_outside_sector(const Statevector& s, int n) {
  double w = 0.0;
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    if (particle_number(i) != n) w += std::norm(s[i]);
  }
  return w;
}

}  // namespace pcbrick
