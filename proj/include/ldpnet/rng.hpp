// Copyright 2026 The ldpnet Authors
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

#ifndef LDPNET_RNG_HPP_
#define LDPNET_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ldpnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a stream seed from a base seed and a tuple of stream coordinates
// (repetition index, mechanism tag, ...).  Distinct tuples give unrelated
// streams, so repetitions can run on any number of workers and still produce
// bit-identical output.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = splitmix64(base);
  for (std::uint64_t p : parts) {
    s = splitmix64(s ^ splitmix64(p));
  }
  return s;
}

// Seedable random source.  The engine is std::mt19937_64, whose sequence is
// fixed by the standard; the distributions are hand-rolled because the
// <random> distribution adapters are not portable across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Geometric on {0, 1, ...} with P(K = k) = (1 - lambda) * lambda^k,
  // lambda in (0, 1).
  std::int64_t geometric(double lambda) {
    const double u = 1.0 - uniform();  // (0, 1]
    return static_cast<std::int64_t>(std::floor(std::log(u) / std::log(lambda)));
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ldpnet

#endif  // LDPNET_RNG_HPP_
