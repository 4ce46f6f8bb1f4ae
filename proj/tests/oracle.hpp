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

// Brute-force references for the unit tests. Everything here builds full
// 2^L x 2^L matrices from Kronecker products, so it only scales to small L.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pcbrick/pcbrick.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using pcbrick::Complex;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Qubit L-1 is the leftmost Kronecker factor (little-endian indices).
inline Mat one_qubit_full(const Mat& g, std::size_t q, std::size_t L) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t k = L; k-- > 0;) out = kron(out, k == q ? g : Mat(Mat::Identity(2, 2)));
  return out;
}

// Sum over the 16 Pauli-basis pieces |r><c| x |r'><c'| of the 4x4 gate.
inline Mat two_qubit_full(const Mat& g, std::size_t first, std::size_t second, std::size_t L) {
  const std::size_t dim = std::size_t{1} << L;
  Mat out = Mat::Zero(dim, dim);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (g(r, c) == Complex(0.0, 0.0)) continue;
      Mat e1 = Mat::Zero(2, 2), e2 = Mat::Zero(2, 2);
      e1(r >> 1, c >> 1) = 1.0;
      e2(r & 1, c & 1) = 1.0;
      Mat term = Mat::Identity(1, 1);
      for (std::size_t k = L; k-- > 0;) {
        if (k == first) term = kron(term, e1);
        else if (k == second) term = kron(term, e2);
        else term = kron(term, Mat(Mat::Identity(2, 2)));
      }
      out += g(r, c) * term;
    }
  }
  return out;
}

inline Mat pauli(pcbrick::Pauli p) {
  switch (p) {
    case pcbrick::Pauli::X: return pcbrick::gates::pauli_x();
    case pcbrick::Pauli::Y: return pcbrick::gates::pauli_y();
    case pcbrick::Pauli::Z: return pcbrick::gates::pauli_z();
  }
  return Mat::Identity(2, 2);
}

inline Mat pauli_string_full(const pcbrick::PauliString& s, std::size_t L) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t k = L; k-- > 0;) {
    Mat f = Mat::Identity(2, 2);
    for (auto [q, p] : s.ops)
      if (q == k) f = pauli(p);
    out = kron(out, f);
  }
  return s.coefficient * out;
}

inline Mat hamiltonian_full(const pcbrick::PauliHamiltonian& h) {
  const std::size_t L = static_cast<std::size_t>(h.num_sites);
  Mat out = Mat::Zero(std::size_t{1} << L, std::size_t{1} << L);
  for (const auto& t : h.terms) out += pauli_string_full(t, L);
  return out;
}

inline Eigen::VectorXcd as_vector(const pcbrick::Statevector& s) {
  Eigen::VectorXcd v(s.dimension());
  for (std::size_t i = 0; i < s.dimension(); ++i) v[i] = s[i];
  return v;
}

// Pascal's rule, no closed form.
inline std::uint64_t binomial(int n, int k) {
  std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    t[i][0] = 1;
    for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return t[n][k];
}

}  // namespace oracle
