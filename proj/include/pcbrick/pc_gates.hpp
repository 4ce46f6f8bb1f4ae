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

// Z2-symmetric and particle-conserving two-qubit gates.
//
// A symmetric gate M is assembled as M = S Q F: the fusion map F takes the
// product basis to a charge-degeneracy basis where the second wire holds the
// Z2 charge, Q acts block-diagonally as a charge-controlled operation, and the
// splitting map S = F^{-1} returns to the product basis. For Z2 on two qubits
// F is a CNOT with the first wire as control.
//
// All 4x4 matrices use the local index 2*bit(first) + bit(second).

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcbrick/gates.hpp"
#include "pcbrick/statevector.hpp"

namespace pcbrick {

enum class PCGateKind { A, B, G };

inline constexpr std::array<PCGateKind, 3> kAllGateKinds = {PCGateKind::A, PCGateKind::B,
                                                            PCGateKind::G};

/// Number of real parameters: A -> (theta, phi), B -> (theta, phi),
/// G -> (alpha, theta, phi1, phi2).
constexpr std::size_t arity(PCGateKind k) { return k == PCGateKind::G ? 4 : 2; }

constexpr std::string_view to_string(PCGateKind k) {
  switch (k) {
    case PCGateKind::A: return "A";
    case PCGateKind::B: return "B";
    case PCGateKind::G: return "G";
  }
  return "?";
}

inline PCGateKind parse_gate_kind(std::string_view s) {
  if (s == "A" || s == "a") return PCGateKind::A;
  if (s == "B" || s == "b") return PCGateKind::B;
  if (s == "G" || s == "g") return PCGateKind::G;
  throw std::invalid_argument("unknown gate kind '" + std::string(s) + "' (expected A, B or G)");
}

// ---------------------------------------------------------------------------
// Closed-form matrices

/// Fusion map F (CNOT, control = first wire). It is an involution, so the
/// splitting map is the same matrix.
inline GateMatrix2 fusion_gate() { return gates::cnot(); }

/// Q = Q0 (x) |0><0| + Q1 (x) |1><1|: Q0/Q1 act on the first (degeneracy)
/// wire, controlled by the charge held on the second wire.
inline GateMatrix2 charge_controlled_op(const GateMatrix1& q0, const GateMatrix1& q1) {
  if (!is_unitary(q0) || !is_unitary(q1)) {
    throw std::invalid_argument("charge_controlled_op: blocks must be unitary");
  }
  GateMatrix2 q = GateMatrix2::Zero();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      q(2 * r, 2 * c) = q0(r, c);
      q(2 * r + 1, 2 * c + 1) = q1(r, c);
    }
  }
  return q;
}

/// Generic Z2-symmetric gate Z = S Q F. Q1 lands in the central block and Q0
/// in the corners.
inline GateMatrix2 z2_generic_gate(const GateMatrix1& q0, const GateMatrix1& q1) {
  const GateMatrix2 f = fusion_gate();
  return f * charge_controlled_op(q0, q1) * f;
}

/// Charge-1 block of gate A.
inline GateMatrix1 v_block(double theta, double phi) {
  GateMatrix1 v;
  v << std::sin(theta), std::polar(std::cos(theta), phi), std::polar(std::cos(theta), -phi),
      -std::sin(theta);
  return v;
}

inline void check_arity(PCGateKind kind, std::span<const double> params) {
  if (params.size() != arity(kind)) {
    throw std::invalid_argument("gate " + std::string(to_string(kind)) + " takes " +
                                std::to_string(arity(kind)) + " parameters, got " +
                                std::to_string(params.size()));
  }
}

/// Closed-form matrix of gate A, B or G.
inline GateMatrix2 gate_matrix(PCGateKind kind, std::span<const double> params) {
  check_arity(kind, params);
  GateMatrix2 m = GateMatrix2::Identity();
  switch (kind) {
    case PCGateKind::A: {
      const double theta = params[0], phi = params[1];
      m.block<2, 2>(1, 1) = v_block(theta, phi);
      break;
    }
    case PCGateKind::B: {
      const double theta = params[0], phi = params[1];
      const Complex c = std::cos(theta), s = -kI * std::sin(theta);
      m(1, 1) = c;
      m(1, 2) = s;
      m(2, 1) = s;
      m(2, 2) = c;
      m(3, 3) = std::polar(1.0, phi);
      break;
    }
    case PCGateKind::G: {
      const double alpha = params[0], theta = params[1], phi1 = params[2], phi2 = params[3];
      const double c = std::cos(theta), s = std::sin(theta);
      const double sum = (phi1 + phi2) / 2, diff = (phi1 - phi2) / 2;
      m(1, 1) = std::polar(c, alpha + sum);
      m(1, 2) = std::polar(s, alpha + diff);
      m(2, 1) = -std::polar(s, alpha - diff);
      m(2, 2) = std::polar(c, alpha - sum);
      break;
    }
  }
  return m;
}

inline GateMatrix2 gate_matrix(PCGateKind kind, std::initializer_list<double> params) {
  return gate_matrix(kind, std::span<const double>(params.begin(), params.size()));
}

// ---------------------------------------------------------------------------
// Elementary-gate sequences

enum class ElementaryKind { CNOT, RX, RY, RZ, PHASE, X, GENERIC_1Q };

constexpr std::string_view to_string(ElementaryKind k) {
  switch (k) {
    case ElementaryKind::CNOT: return "CNOT";
    case ElementaryKind::RX: return "RX";
    case ElementaryKind::RY: return "RY";
    case ElementaryKind::RZ: return "RZ";
    case ElementaryKind::PHASE: return "PHASE";
    case ElementaryKind::X: return "X";
    case ElementaryKind::GENERIC_1Q: return "GENERIC_1Q";
  }
  return "?";
}

/// One placement. CNOT uses wires {control, target}; one-qubit kinds use
/// wires[0]. GENERIC_1Q carries (a, b, c, d) meaning e^{ia} Rz(b) Ry(c) Rz(d).
struct ElementaryGate {
  ElementaryKind kind;
  std::array<std::size_t, 2> wires{};
  std::vector<double> params;

  std::size_t num_wires() const { return kind == ElementaryKind::CNOT ? 2 : 1; }
};

inline GateMatrix1 one_qubit_matrix(const ElementaryGate& g) {
  switch (g.kind) {
    case ElementaryKind::RX: return gates::rx(g.params.at(0));
    case ElementaryKind::RY: return gates::ry(g.params.at(0));
    case ElementaryKind::RZ: return gates::rz(g.params.at(0));
    case ElementaryKind::PHASE: return gates::phase(g.params.at(0));
    case ElementaryKind::X: return gates::pauli_x();
    case ElementaryKind::GENERIC_1Q:
      return std::polar(1.0, g.params.at(0)) * gates::rz(g.params.at(1)) *
             gates::ry(g.params.at(2)) * gates::rz(g.params.at(3));
    case ElementaryKind::CNOT: break;
  }
  throw std::invalid_argument("one_qubit_matrix: CNOT is a two-qubit gate");
}

/// Ordered list of CNOTs and one-qubit rotations on `width` wires; gates are
/// applied front to back.
class ElementaryGateSequence {
 public:
  explicit ElementaryGateSequence(std::size_t width) : width_(width) {
    if (width == 0) throw std::invalid_argument("ElementaryGateSequence: width must be >= 1");
  }

  std::size_t width() const { return width_; }
  const std::vector<ElementaryGate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  ElementaryGateSequence& cnot(std::size_t control, std::size_t target) {
    check_wire(control);
    check_wire(target);
    if (control == target) throw std::invalid_argument("CNOT needs distinct wires");
    gates_.push_back({ElementaryKind::CNOT, {control, target}, {}});
    return *this;
  }
  ElementaryGateSequence& rx(std::size_t q, double t) { return one(ElementaryKind::RX, q, {t}); }
  ElementaryGateSequence& ry(std::size_t q, double t) { return one(ElementaryKind::RY, q, {t}); }
  ElementaryGateSequence& rz(std::size_t q, double t) { return one(ElementaryKind::RZ, q, {t}); }
  ElementaryGateSequence& phase(std::size_t q, double t) {
    return one(ElementaryKind::PHASE, q, {t});
  }
  ElementaryGateSequence& x(std::size_t q) { return one(ElementaryKind::X, q, {}); }
  ElementaryGateSequence& generic(std::size_t q, double a, double b, double c, double d) {
    return one(ElementaryKind::GENERIC_1Q, q, {a, b, c, d});
  }

  /// SWAP as three CNOTs.
  ElementaryGateSequence& swap(std::size_t a, std::size_t b) {
    return cnot(a, b).cnot(b, a).cnot(a, b);
  }

  ElementaryGateSequence& append(const ElementaryGateSequence& other) {
    if (other.width_ > width_) throw std::invalid_argument("append: sequence is wider");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
  }

  std::size_t cnot_count() const {
    std::size_t n = 0;
    for (const auto& g : gates_) n += g.kind == ElementaryKind::CNOT;
    return n;
  }

  /// Same gates with wire w moved to wire_map[w], on a register of `new_width`.
  ElementaryGateSequence remapped(std::span<const std::size_t> wire_map,
                                  std::size_t new_width) const {
    if (wire_map.size() != width_) throw std::invalid_argument("remapped: wire map size");
    ElementaryGateSequence out(new_width);
    for (auto g : gates_) {
      for (std::size_t k = 0; k < g.num_wires(); ++k) g.wires[k] = wire_map[g.wires[k]];
      for (std::size_t k = 0; k < g.num_wires(); ++k) out.check_wire(g.wires[k]);
      out.gates_.push_back(std::move(g));
    }
    return out;
  }

 private:
  ElementaryGateSequence& one(ElementaryKind k, std::size_t q, std::vector<double> p) {
    check_wire(q);
    gates_.push_back({k, {q, q}, std::move(p)});
    return *this;
  }

  void check_wire(std::size_t w) const {
    if (w >= width_) {
      throw std::out_of_range("wire " + std::to_string(w) + " outside width " +
                              std::to_string(width_));
    }
  }

  std::size_t width_;
  std::vector<ElementaryGate> gates_;
};

/// Applies the sequence to a state whose qubit q is the sequence's wire q.
inline void apply(Statevector& state, const ElementaryGateSequence& seq) {
  if (seq.width() > state.num_qubits()) throw std::invalid_argument("apply: sequence too wide");
  for (const auto& g : seq.gates()) {
    if (g.kind == ElementaryKind::CNOT) {
      state.apply(gates::cnot(), g.wires[0], g.wires[1]);
    } else if (g.kind == ElementaryKind::X) {
      state.flip(g.wires[0]);
    } else {
      state.apply(one_qubit_matrix(g), g.wires[0]);
    }
  }
}

/// Full 2^w x 2^w unitary of one placement on a w-wire register, written out
/// entry by entry: <r|U|c> is the local gate entry when r and c agree off the
/// gate's support, zero otherwise. Independent of Statevector's stride loops.
inline Eigen::MatrixXcd embed(const ElementaryGate& g, std::size_t width) {
  const std::size_t dim = std::size_t{1} << width;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  if (g.kind == ElementaryKind::CNOT) {
    const std::size_t c = g.wires[0], t = g.wires[1];
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t row = ((col >> c) & 1) ? col ^ (std::size_t{1} << t) : col;
      u(row, col) = 1.0;
    }
    return u;
  }
  const GateMatrix1 m = one_qubit_matrix(g);
  const std::size_t q = g.wires[0], bit = std::size_t{1} << q;
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t col = 0; col < dim; ++col) {
      if ((row & ~bit) != (col & ~bit)) continue;
      u(row, col) = m((row >> q) & 1, (col >> q) & 1);
    }
  }
  return u;
}

/// Brute-force product of all placements. Intended for small widths.
inline Eigen::MatrixXcd reconstruct_unitary(const ElementaryGateSequence& seq) {
  if (seq.width() > 10) throw std::invalid_argument("reconstruct_unitary: width > 10");
  const std::size_t dim = std::size_t{1} << seq.width();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : seq.gates()) u = embed(g, seq.width()) * u;
  return u;
}

/// Local 4x4 of a width-2 sequence in the (first=wire 0, second=wire 1) index
/// convention. reconstruct_unitary uses little-endian indices, so wire 0 is the
/// low bit there; this swaps to the gate-matrix convention.
inline GateMatrix2 reconstruct_gate(const ElementaryGateSequence& seq) {
  if (seq.width() != 2) throw std::invalid_argument("reconstruct_gate: width must be 2");
  const Eigen::MatrixXcd u = reconstruct_unitary(seq);
  auto local = [](std::size_t le) { return ((le & 1) << 1) | ((le >> 1) & 1); };
  GateMatrix2 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(local(r), local(c)) = u(r, c);
  return m;
}

namespace detail {

// Controlled-W with W = e^{i a} Rz(b) Ry(c) Rz(d), written as
// W = e^{ia} A X B X C with ABC = I:
//   A = Rz(b) Ry(c/2), B = Ry(-c/2) Rz(-(d+b)/2), C = Rz((d-b)/2),
// plus P(a) on the control.
inline void controlled_zyz(ElementaryGateSequence& seq, std::size_t control, std::size_t target,
                           double a, double b, double c, double d) {
  seq.rz(target, (d - b) / 2);
  seq.cnot(control, target);
  seq.rz(target, -(d + b) / 2).ry(target, -c / 2);
  seq.cnot(control, target);
  seq.ry(target, c / 2).rz(target, b);
  if (a != 0.0) seq.phase(control, a);
}

}  // namespace detail

/// Elementary circuit for gate A, B or G on wires (0, 1), reconstructing the
/// closed-form matrix exactly (no global phase slack).
///
/// A: fusion CNOT, then the charge-1 block V = U^dagger X U with
///    U = Ry(theta) Rz(phi) as a conjugated CNOT, then the splitting CNOT.
/// B: phase gates P(phi/2) pull the |11> phase out of the charge-0 block; the
///    charge-1 block is a controlled Rx(2 theta).
/// G: controlled e^{i alpha} Rz(-phi1) Ry(-2 theta) Rz(-phi2) between the
///    fusion and splitting CNOTs.
inline ElementaryGateSequence decompose(PCGateKind kind, std::span<const double> params) {
  check_arity(kind, params);
  ElementaryGateSequence seq(2);
  switch (kind) {
    case PCGateKind::A: {
      const double theta = params[0], phi = params[1];
      seq.cnot(0, 1);
      seq.rz(0, phi).ry(0, theta);
      seq.cnot(1, 0);
      seq.ry(0, -theta).rz(0, -phi);
      seq.cnot(0, 1);
      break;
    }
    case PCGateKind::B: {
      const double theta = params[0], phi = params[1];
      seq.phase(0, phi / 2).phase(1, phi / 2);
      seq.cnot(0, 1);
      seq.phase(1, -phi / 2);
      // Rx(2 theta) = Rz(-pi/2) Ry(2 theta) Rz(pi/2)
      detail::controlled_zyz(seq, 1, 0, 0.0, -std::numbers::pi / 2, 2 * theta,
                             std::numbers::pi / 2);
      seq.cnot(0, 1);
      break;
    }
    case PCGateKind::G: {
      const double alpha = params[0], theta = params[1], phi1 = params[2], phi2 = params[3];
      seq.cnot(0, 1);
      detail::controlled_zyz(seq, 1, 0, alpha, -phi1, -2 * theta, -phi2);
      seq.cnot(0, 1);
      break;
    }
  }
  return seq;
}

inline ElementaryGateSequence decompose(PCGateKind kind, std::initializer_list<double> params) {
  return decompose(kind, std::span<const double>(params.begin(), params.size()));
}

inline void check_long_range_wires(std::size_t wire_i, std::size_t wire_j, std::size_t width) {
  if (!(wire_i < wire_j && wire_j < width)) {
    throw std::invalid_argument("long-range gate needs wire_i < wire_j < width (got " +
                                std::to_string(wire_i) + ", " + std::to_string(wire_j) + ", " +
                                std::to_string(width) + ")");
  }
}

/// The same fusion / controlled / splitting circuit placed directly on two
/// distant wires; wires in between are never touched and no SWAPs are used.
inline ElementaryGateSequence long_range_gate(PCGateKind kind, std::span<const double> params,
                                              std::size_t wire_i, std::size_t wire_j,
                                              std::size_t width) {
  check_long_range_wires(wire_i, wire_j, width);
  const std::array<std::size_t, 2> map = {wire_i, wire_j};
  return decompose(kind, params).remapped(map, width);
}

/// Reference construction for long_range_gate: SWAP wire_i down until it sits
/// next to wire_j, apply the nearest-neighbour circuit, SWAP back.
inline ElementaryGateSequence swap_network_gate(PCGateKind kind, std::span<const double> params,
                                                std::size_t wire_i, std::size_t wire_j,
                                                std::size_t width) {
  check_long_range_wires(wire_i, wire_j, width);
  ElementaryGateSequence seq(width);
  for (std::size_t w = wire_i; w + 1 < wire_j; ++w) seq.swap(w, w + 1);
  const std::array<std::size_t, 2> map = {wire_j - 1, wire_j};
  seq.append(decompose(kind, params).remapped(map, width));
  for (std::size_t w = wire_j - 1; w > wire_i; --w) seq.swap(w - 1, w);
  return seq;
}

// ---------------------------------------------------------------------------
// Canonical form of a particle-conserving unitary

/// True when U has the block pattern of a particle-conserving two-qubit gate:
/// only (0,0), (3,3) and the central 2x2 may be non-zero.
inline bool is_particle_conserving(const GateMatrix2& u, double tol = tol::kPattern) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const bool allowed = (r == c) || ((r == 1 || r == 2) && (c == 1 || c == 2));
      if (!allowed && std::abs(u(r, c)) > tol) return false;
    }
  }
  return true;
}

/// U = phase_layer(omega1, omega2) * gate_matrix(G, {alpha, theta, phi1, phi2}).
struct PCCanonicalForm {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  std::array<double, 4> g_params() const { return {alpha, theta, phi1, phi2}; }
};

/// t (x) t with t = diag(e^{i w1/2}, e^{i w2/2}): a product of two identical
/// single-qubit phase gates, diag(e^{i w1}, e^{i(w1+w2)/2}, e^{i(w1+w2)/2}, e^{i w2}).
inline GateMatrix2 phase_layer(double omega1, double omega2) {
  GateMatrix1 t = GateMatrix1::Zero();
  t(0, 0) = std::polar(1.0, omega1 / 2);
  t(1, 1) = std::polar(1.0, omega2 / 2);
  GateMatrix2 m = GateMatrix2::Zero();
  for (int r = 0; r < 4; ++r) m(r, r) = t(r >> 1, r >> 1) * t(r & 1, r & 1);
  return m;
}

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double kTwoPi = 2 * std::numbers::pi;
  a = std::remainder(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

/// Factors a particle-conserving unitary into a phase layer times gate G.
/// Gauge: theta in [0, pi/2], all phases in (-pi, pi]; when cos(theta) or
/// sin(theta) vanishes, the phase combination it would carry is set to 0.
inline PCCanonicalForm canonicalize_pc_unitary(const GateMatrix2& u) {
  if (!is_particle_conserving(u)) {
    throw std::invalid_argument("canonicalize_pc_unitary: input is not particle-conserving");
  }
  const GateMatrix1 center = u.block<2, 2>(1, 1);
  if (!is_unitary(center) || std::abs(std::abs(u(0, 0)) - 1.0) > tol::kUnitarity ||
      std::abs(std::abs(u(3, 3)) - 1.0) > tol::kUnitarity) {
    throw std::invalid_argument("canonicalize_pc_unitary: blocks are not unitary");
  }
  constexpr double kPi = std::numbers::pi;
  constexpr double kDegenerate = 1e-12;

  PCCanonicalForm f;
  f.omega1 = std::arg(u(0, 0));
  f.omega2 = std::arg(u(3, 3));
  // Central block of G itself.
  const GateMatrix1 w = std::polar(1.0, -(f.omega1 + f.omega2) / 2) * center;
  double alpha = std::arg(w.determinant()) / 2;
  const GateMatrix1 su = std::polar(1.0, -alpha) * w;  // [[p, q], [-q*, p*]]
  const Complex p = su(0, 0), q = su(0, 1);
  f.theta = std::atan2(std::abs(q), std::abs(p));
  const double arg_p = std::abs(p) < kDegenerate ? 0.0 : std::arg(p);
  const double arg_q = std::abs(q) < kDegenerate ? 0.0 : std::arg(q);
  double phi1 = arg_p + arg_q;
  double phi2 = arg_p - arg_q;
  // Shifting phi1 or phi2 by 2 pi flips the sign of both (phi1 +- phi2)/2
  // exponentials; alpha absorbs it with a shift of pi.
  for (double* phi : {&phi1, &phi2}) {
    const double wrapped = wrap_angle(*phi);
    const long turns = std::lround((*phi - wrapped) / (2 * kPi));
    if (turns % 2 != 0) alpha += kPi;
    *phi = wrapped;
  }
  f.phi1 = phi1;
  f.phi2 = phi2;
  f.alpha = wrap_angle(alpha);
  return f;
}

inline GateMatrix2 reconstruct(const PCCanonicalForm& f) {
  const auto p = f.g_params();
  return phase_layer(f.omega1, f.omega2) * gate_matrix(PCGateKind::G, p);
}

}  // namespace pcbrick
