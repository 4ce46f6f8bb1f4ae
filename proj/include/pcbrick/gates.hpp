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

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "pcbrick/tolerances.hpp"

namespace pcbrick {

using Complex = std::complex<double>;

/// Dense unitary on one qubit.
using GateMatrix1 = Eigen::Matrix2cd;

/// Dense unitary on an ordered pair of qubits (first, second). Row and column
/// index is 2*bit(first) + bit(second), so |01> means first=0, second=1.
using GateMatrix2 = Eigen::Matrix4cd;

inline constexpr Complex kI{0.0, 1.0};

namespace gates {

inline GateMatrix1 identity1() { return GateMatrix1::Identity(); }

inline GateMatrix1 pauli_x() {
  GateMatrix1 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline GateMatrix1 pauli_y() {
  GateMatrix1 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

inline GateMatrix1 pauli_z() {
  GateMatrix1 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

inline GateMatrix1 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  GateMatrix1 m;
  m << s, s, s, -s;
  return m;
}

inline GateMatrix1 s_dagger() {
  GateMatrix1 m;
  m << 1.0, 0.0, 0.0, -kI;
  return m;
}

// R_a(t) = exp(-i t a / 2)
inline GateMatrix1 rx(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  GateMatrix1 m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

inline GateMatrix1 ry(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  GateMatrix1 m;
  m << c, -s, s, c;
  return m;
}

inline GateMatrix1 rz(double t) {
  GateMatrix1 m;
  m << std::polar(1.0, -t / 2), 0.0, 0.0, std::polar(1.0, t / 2);
  return m;
}

/// P(phi) = diag(1, e^{i phi}).
inline GateMatrix1 phase(double phi) {
  GateMatrix1 m;
  m << 1.0, 0.0, 0.0, std::polar(1.0, phi);
  return m;
}

/// CNOT with the first qubit as control.
inline GateMatrix2 cnot() {
  GateMatrix2 m = GateMatrix2::Zero();
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 3) = m(3, 2) = 1.0;
  return m;
}

inline GateMatrix2 swap() {
  GateMatrix2 m = GateMatrix2::Zero();
  m(0, 0) = m(3, 3) = 1.0;
  m(1, 2) = m(2, 1) = 1.0;
  return m;
}

/// Two-qubit number operator diag(0, 1, 1, 2).
inline GateMatrix2 number_operator2() {
  GateMatrix2 m = GateMatrix2::Zero();
  m(1, 1) = m(2, 2) = 1.0;
  m(3, 3) = 2.0;
  return m;
}

/// Z (x) Z, the two-qubit parity.
inline GateMatrix2 parity2() {
  GateMatrix2 m = GateMatrix2::Zero();
  m(0, 0) = m(3, 3) = 1.0;
  m(1, 1) = m(2, 2) = -1.0;
  return m;
}

}  // namespace gates

/// max |M^dagger M - I|.
template <typename Derived>
double unitarity_residual(const Eigen::MatrixBase<Derived>& m) {
  const auto n = m.rows();
  return (m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = tol::kUnitarity) {
  return m.rows() == m.cols() && unitarity_residual(m) < tol;
}

/// max |A B - B A|.
template <typename DA, typename DB>
double commutator_residual(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

template <typename DA, typename DB>
double max_abs_diff(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace pcbrick
