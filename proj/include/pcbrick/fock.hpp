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

// Fixed-particle-number subspaces: dimensions, basis enumeration and the
// combinatorial rank of a basis index inside its sector.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcbrick {

inline void check_occupation(int num_sites, int num_particles) {
  if (num_sites < 0 || num_particles < 0 || num_particles > num_sites) {
    throw std::invalid_argument("need 0 <= N <= L (got L=" + std::to_string(num_sites) +
                                ", N=" + std::to_string(num_particles) + ")");
  }
}

/// Binomial coefficient C(L, N), exact. Throws on overflow of 64 bits.
inline std::uint64_t fock_dimension(int num_sites, int num_particles) {
  check_occupation(num_sites, num_particles);
  const int k = std::min(num_particles, num_sites - num_particles);
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(num_sites - k + i) / static_cast<unsigned>(i);
    if (c > UINT64_MAX) throw std::overflow_error("fock_dimension: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

/// H_{N,L}: span of L-bit basis states with exactly N bits set.
struct FockSpace {
  int num_sites = 0;
  int num_particles = 0;
  std::uint64_t dim = 0;

  FockSpace(int l, int n) : num_sites(l), num_particles(n), dim(fock_dimension(l, n)) {}
};

/// All weight-N indices of an L-bit register in increasing order.
inline std::vector<std::uint64_t> fock_basis(int num_sites, int num_particles) {
  check_occupation(num_sites, num_particles);
  if (num_sites > 62) throw std::invalid_argument("fock_basis: L too large");
  std::vector<std::uint64_t> out;
  out.reserve(fock_dimension(num_sites, num_particles));
  if (num_particles == 0) {
    out.push_back(0);
    return out;
  }
  // Gosper's hack: next integer with the same popcount.
  std::uint64_t v = (std::uint64_t{1} << num_particles) - 1;
  const std::uint64_t end = std::uint64_t{1} << num_sites;
  while (v < end) {
    out.push_back(v);
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

/// Position of `index` in fock_basis(L, popcount(index)) (combinatorial
/// number system).
inline std::uint64_t fock_rank(std::uint64_t index) {
  std::uint64_t rank = 0;
  int k = 0;
  for (int bit = 0; bit < 64; ++bit) {
    if ((index >> bit) & 1) {
      ++k;
      if (bit >= k) rank += fock_dimension(bit, k);
    }
  }
  return rank;
}

}  // namespace pcbrick
