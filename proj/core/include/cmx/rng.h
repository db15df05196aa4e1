// Copyright 2026 The cmxkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CMX_RNG_H_
#define CMX_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace cmx {

// Seeded random source whose outputs are identical across standard library
// implementations. The std distributions are implementation-defined, so the
// bounded-integer, real and normal draws are computed here from raw
// mt19937_64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t UniformIndex(std::uint64_t n);

  // Uniform in [0, 1) with 53 random bits.
  double UniformReal();

  // Standard normal via Box-Muller.
  double Normal();

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = UniformIndex(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stateless 64-bit mixer (splitmix64 finalizer).
std::uint64_t Mix64(std::uint64_t x);

// Per-record seed from a run seed and a record key, independent of the
// order in which records are visited.
std::uint64_t DeriveSeed(std::uint64_t global_seed, std::string_view key);

}  // namespace cmx

#endif  // CMX_RNG_H_
