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

// Spin-chain Hamiltonians as Pauli sums, their matrices, and exact
// diagonalization (full space or one particle-number sector).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <bit>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "pcbrick/fock.hpp"
#include "pcbrick/pauli.hpp"
#include "pcbrick/rng.hpp"
#include "pcbrick/statevector.hpp"
#include "pcbrick/tolerances.hpp"

namespace pcbrick {

/// Sum of real-weighted Pauli strings on L sites.
struct PauliHamiltonian {
  int num_sites = 0;
  std::vector<PauliString> terms;
};

namespace detail {

inline void add_heisenberg_bond(PauliHamiltonian& h, std::size_t i, std::size_t j, double jxy,
                                double jz) {
  if (jxy != 0.0) {
    h.terms.emplace_back(jxy, std::vector<std::pair<std::size_t, Pauli>>{{i, Pauli::X}, {j, Pauli::X}});
    h.terms.emplace_back(jxy, std::vector<std::pair<std::size_t, Pauli>>{{i, Pauli::Y}, {j, Pauli::Y}});
  }
  if (jz != 0.0) {
    h.terms.emplace_back(jz, std::vector<std::pair<std::size_t, Pauli>>{{i, Pauli::Z}, {j, Pauli::Z}});
  }
}

}  // namespace detail

/// Open chain: sum_i X_i X_{i+1} + Y_i Y_{i+1} + gamma Z_i Z_{i+1}. Terms with
/// zero weight are omitted, so gamma = 0 gives the XX chain.
inline PauliHamiltonian xxz_hamiltonian(int num_sites, double gamma) {
  if (num_sites < 2) throw std::invalid_argument("xxz_hamiltonian: need L >= 2");
  PauliHamiltonian h{num_sites, {}};
  for (int i = 0; i + 1 < num_sites; ++i) {
    detail::add_heisenberg_bond(h, i, i + 1, 1.0, gamma);
  }
  return h;
}

/// Open chain with isotropic couplings on all (i, i+1) and (i, i+2) pairs.
inline PauliHamiltonian nnn_heisenberg(int num_sites) {
  if (num_sites < 3) throw std::invalid_argument("nnn_heisenberg: need L >= 3");
  PauliHamiltonian h{num_sites, {}};
  for (int i = 0; i + 1 < num_sites; ++i) detail::add_heisenberg_bond(h, i, i + 1, 1.0, 1.0);
  for (int i = 0; i + 2 < num_sites; ++i) detail::add_heisenberg_bond(h, i, i + 2, 1.0, 1.0);
  return h;
}

/// Named model: "xxz" (uses gamma), "xx" (gamma forced to 0) or "nnn".
inline PauliHamiltonian model_hamiltonian(std::string_view model, int num_sites, double gamma) {
  if (model == "xxz") return xxz_hamiltonian(num_sites, gamma);
  if (model == "xx") return xxz_hamiltonian(num_sites, 0.0);
  if (model == "nnn") return nnn_heisenberg(num_sites);
  throw std::invalid_argument("unknown model '" + std::string(model) + "' (expected xxz, xx or nnn)");
}

/// M = sum_i Z_i.
inline PauliHamiltonian total_magnetization(int num_sites) {
  PauliHamiltonian h{num_sites, {}};
  for (int i = 0; i < num_sites; ++i) {
    h.terms.emplace_back(1.0, std::vector<std::pair<std::size_t, Pauli>>{{static_cast<std::size_t>(i), Pauli::Z}});
  }
  return h;
}

inline double expectation(const Statevector& state, const PauliHamiltonian& h) {
  return expectation(state, std::span<const PauliString>(h.terms));
}

// ---------------------------------------------------------------------------
// Matrices

inline constexpr int kMaxDenseSites = 12;
inline constexpr int kMaxEdSites = 16;

/// Sparse matrix of H on the given basis (full register when `sector` is
/// empty, weight-N states otherwise). Throws if H couples the sector to others.
inline Eigen::SparseMatrix<Complex> sparse_matrix(const PauliHamiltonian& h,
                                                  std::optional<int> sector = std::nullopt) {
  if (h.num_sites < 1 || h.num_sites > kMaxEdSites) {
    throw std::length_error("sparse_matrix: L=" + std::to_string(h.num_sites) +
                            " exceeds the size cap of " + std::to_string(kMaxEdSites));
  }
  std::vector<std::uint64_t> basis;
  if (sector) {
    basis = fock_basis(h.num_sites, *sector);
  } else {
    basis.resize(std::size_t{1} << h.num_sites);
    for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
  }
  std::vector<PauliAction> actions;
  for (const auto& t : h.terms) {
    if (!t.ops.empty() && t.max_qubit() >= static_cast<std::size_t>(h.num_sites)) {
      throw std::out_of_range("sparse_matrix: term " + t.str() + " outside the chain");
    }
    actions.emplace_back(t);
  }
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(basis.size() * (h.terms.size() + 1));
  // Individual strings may leave the sector (X_i X_j alone does); only the
  // column sum over all strings has to stay inside it.
  std::vector<std::pair<std::uint64_t, Complex>> column;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const std::uint64_t b = basis[col];
    column.clear();
    for (std::size_t k = 0; k < actions.size(); ++k) {
      column.emplace_back(b ^ actions[k].x_mask, h.terms[k].coefficient * actions[k].phase(b));
    }
    std::sort(column.begin(), column.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < column.size();) {
      const std::uint64_t target = column[i].first;
      Complex v{0.0, 0.0};
      for (; i < column.size() && column[i].first == target; ++i) v += column[i].second;
      if (!sector) {
        trips.emplace_back(target, col, v);
      } else if (std::popcount(target) == *sector) {
        trips.emplace_back(fock_rank(target), col, v);
      } else if (std::abs(v) > tol::kExact) {
        throw std::invalid_argument("sparse_matrix: Hamiltonian does not conserve particle number");
      }
    }
  }
  Eigen::SparseMatrix<Complex> m(basis.size(), basis.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

/// Dense 2^L x 2^L matrix (or d x d on a sector).
inline Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h,
                                     std::optional<int> sector = std::nullopt) {
  if (h.num_sites > kMaxDenseSites) {
    throw std::length_error("dense_matrix: L=" + std::to_string(h.num_sites) +
                            " exceeds the dense cap of " + std::to_string(kMaxDenseSites));
  }
  return Eigen::MatrixXcd(sparse_matrix(h, sector));
}

/// Rows/columns of `full` on the weight-N basis states, in fock_basis order.
inline Eigen::MatrixXcd restrict_to_sector(const Eigen::MatrixXcd& full, int num_sites,
                                           int num_particles) {
  if (full.rows() != (Eigen::Index{1} << num_sites) || full.cols() != full.rows()) {
    throw std::invalid_argument("restrict_to_sector: matrix size does not match L");
  }
  const auto basis = fock_basis(num_sites, num_particles);
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = full(basis[r], basis[c]);
  return m;
}

/// sum_i n_i as a diagonal matrix.
inline Eigen::MatrixXcd number_operator(int num_sites) {
  const Eigen::Index dim = Eigen::Index{1} << num_sites;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = std::popcount(static_cast<std::uint64_t>(i));
  return m;
}

/// Hard-core bosons on an open chain:
///   sum_i a_i^dag a_{i+1} + a_{i+1}^dag a_i + delta n_i n_{i+1},
/// with a = |0><1| and n = |1><1| on each site (bit set = occupied).
inline Eigen::MatrixXcd hcbh_hamiltonian(int num_sites, double delta) {
  if (num_sites < 2) throw std::invalid_argument("hcbh_hamiltonian: need L >= 2");
  if (num_sites > kMaxDenseSites) throw std::length_error("hcbh_hamiltonian: L too large");
  const std::uint64_t dim = std::uint64_t{1} << num_sites;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    for (int i = 0; i + 1 < num_sites; ++i) {
      const std::uint64_t bi = std::uint64_t{1} << i, bj = std::uint64_t{1} << (i + 1);
      const bool ni = b & bi, nj = b & bj;
      if (ni != nj) m(b ^ bi ^ bj, b) += 1.0;  // one hop in either direction
      if (ni && nj) m(b, b) += delta;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Exact diagonalization

struct SpectralResult {
  double ground_energy = 0.0;
  std::optional<Statevector> ground_vector;  // full 2^L register
  std::optional<int> sector;
};

enum class EdMethod { kAuto, kDense, kLanczos };

/// Dense solve is used up to this dimension under kAuto.
inline constexpr std::size_t kDenseEdMaxDim = 1024;

struct LanczosOptions {
  int krylov_dim = 80;
  int max_restarts = 200;
  double tol = tol::kLanczos;
  std::uint64_t seed = 0x5EED;
};

struct LanczosResult {
  double eigenvalue = 0.0;
  Eigen::VectorXcd eigenvector;
  double residual = 0.0;
  int restarts = 0;
};

/// Lowest eigenpair of a Hermitian sparse matrix by restarted Lanczos with
/// full reorthogonalization. Each restart begins from the current Ritz
/// vector. Converged when ||A x - lambda x|| < tol * max(1, |lambda|).
inline LanczosResult lanczos_ground_state(const Eigen::SparseMatrix<Complex>& a,
                                          const LanczosOptions& opt = {}) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) throw std::invalid_argument("lanczos: matrix must be square");
  const Eigen::Index m = std::min<Eigen::Index>(opt.krylov_dim, n);

  CounterRng rng(opt.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = Complex(normal(rng), normal(rng));
  x.normalize();

  LanczosResult res;
  Eigen::MatrixXcd v(n, m);
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    std::vector<double> alpha, beta;
    v.col(0) = x;
    Eigen::Index k = 0;
    for (; k < m; ++k) {
      Eigen::VectorXcd w = a * v.col(k);
      alpha.push_back(v.col(k).dot(w).real());
      // Full reorthogonalization, applied twice for stability.
      for (int pass = 0; pass < 2; ++pass) {
        w -= v.leftCols(k + 1) * (v.leftCols(k + 1).adjoint() * w);
      }
      const double b = w.norm();
      if (k + 1 == m || b < 1e-13) {
        ++k;
        break;
      }
      beta.push_back(b);
      v.col(k + 1) = w / b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    x = v.leftCols(k) * y.cast<Complex>();
    x.normalize();
    res.eigenvalue = es.eigenvalues()[0];
    res.residual = (a * x - res.eigenvalue * x).norm();
    res.restarts = restart;
    if (res.residual < opt.tol * std::max(1.0, std::abs(res.eigenvalue)) || k < m) break;
  }
  res.eigenvector = x;
  if (res.residual >= opt.tol * std::max(1.0, std::abs(res.eigenvalue)) * 10) {
    throw std::runtime_error("lanczos: no convergence (residual " +
                             std::to_string(res.residual) + ")");
  }
  return res;
}

/// Ground energy and vector of H, optionally inside the weight-N sector.
inline SpectralResult exact_ground_energy(const PauliHamiltonian& h,
                                          std::optional<int> sector = std::nullopt,
                                          EdMethod method = EdMethod::kAuto) {
  if (h.num_sites < 1 || h.num_sites > kMaxEdSites) {
    throw std::length_error("exact_ground_energy: L=" + std::to_string(h.num_sites) +
                            " exceeds the size cap of " + std::to_string(kMaxEdSites));
  }
  if (sector) check_occupation(h.num_sites, *sector);
  const Eigen::SparseMatrix<Complex> m = sparse_matrix(h, sector);
  if (method == EdMethod::kAuto) {
    method = static_cast<std::size_t>(m.rows()) <= kDenseEdMaxDim ? EdMethod::kDense
                                                                   : EdMethod::kLanczos;
  }
  Eigen::VectorXcd vec;
  SpectralResult out;
  out.sector = sector;
  if (method == EdMethod::kDense) {
    if (static_cast<std::size_t>(m.rows()) > (std::size_t{1} << kMaxDenseSites)) {
      throw std::length_error("exact_ground_energy: dense solve too large");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(m)};
    out.ground_energy = es.eigenvalues()[0];
    vec = es.eigenvectors().col(0);
  } else {
    const LanczosResult r = lanczos_ground_state(m);
    out.ground_energy = r.eigenvalue;
    vec = r.eigenvector;
  }
  std::vector<Complex> amps(std::size_t{1} << h.num_sites, Complex{0.0, 0.0});
  if (sector) {
    const auto basis = fock_basis(h.num_sites, *sector);
    for (std::size_t i = 0; i < basis.size(); ++i) amps[basis[i]] = vec[i];
  } else {
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = vec[i];
  }
  out.ground_vector = Statevector::from_amplitudes(std::move(amps));
  return out;
}

/// Sorted eigenvalues of a Hermitian matrix.
inline std::vector<double> spectrum(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Sector-wise comparison of sorted spectra: E_a[k] against scale * E_b[k] + c
/// with c fitted by least squares.
struct SectorFit {
  int num_particles = 0;
  double offset = 0.0;
  double max_deviation = 0.0;
};

inline SectorFit fit_sector_spectra(const std::vector<double>& a, const std::vector<double>& b,
                                    double scale, int num_particles) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("fit_sector_spectra: spectra differ in size");
  }
  SectorFit f;
  f.num_particles = num_particles;
  for (std::size_t k = 0; k < a.size(); ++k) f.offset += a[k] - scale * b[k];
  f.offset /= static_cast<double>(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    f.max_deviation = std::max(f.max_deviation, std::abs(a[k] - scale * b[k] - f.offset));
  }
  return f;
}

/// Compares the XXZ chain with 2 * HCBH(delta = 2 gamma) in every sector.
inline std::vector<SectorFit> xxz_hcbh_sector_fits(int num_sites, double gamma) {
  const Eigen::MatrixXcd xxz = dense_matrix(xxz_hamiltonian(num_sites, gamma));
  const Eigen::MatrixXcd hcbh = hcbh_hamiltonian(num_sites, 2 * gamma);
  std::vector<SectorFit> fits;
  for (int n = 0; n <= num_sites; ++n) {
    fits.push_back(fit_sector_spectra(spectrum(restrict_to_sector(xxz, num_sites, n)),
                                      spectrum(restrict_to_sector(hcbh, num_sites, n)), 2.0, n));
  }
  return fits;
}

}  // namespace pcbrick
