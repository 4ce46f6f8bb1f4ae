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

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace pcbrick {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the n-th output is a pure function of (key, n),
/// so any stream can be reconstructed without replaying other streams.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    return mix64(key_ + 0x9E3779B97F4A7C15ULL * (++counter_));
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Hash of a seed and a path of indices, e.g. derive_seed(seed, {stream, sample, trial}).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed ^ 0x6A09E667F3BCC909ULL);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x9E3779B97F4A7C15ULL));
  return h;
}

/// Stream tags keep sub-seeds of different purposes disjoint.
enum class Stream : std::uint64_t {
  kInitialParameters = 1,
  kHaarSample = 2,
  kShots = 3,
};

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream stream, std::uint64_t a,
                                    std::uint64_t b = 0) {
  return derive_seed(seed, {static_cast<std::uint64_t>(stream), a, b});
}

}  // namespace pcbrick
