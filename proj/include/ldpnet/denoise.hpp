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

#ifndef LDPNET_DENOISE_HPP_
#define LDPNET_DENOISE_HPP_

#include "ldpnet/graph.hpp"

namespace ldpnet {

struct DenoiseResult {
  BiDegreeSequence sequence;
  long l1_cost = 0;
  // True when produced by the exhaustive oracle (guaranteed minimal).
  bool exact = false;
};

// Largest n for which brute_force_denoise_oracle enumerates all 2^{n(n-1)}
// digraphs; denoise_l1 delegates to the oracle up to this size.
inline constexpr Eigen::Index kDenoiseOracleMaxNodes = 4;

// L1 projection of a noisy integer bi-sequence onto the graphical set.
// Exact (oracle) for n <= kDenoiseOracleMaxNodes, greedy heuristic beyond.
DenoiseResult denoise_l1(const IntegerBiSequence& z, Eigen::Index n);

// The greedy pipeline at any size: clamp to [0, n-1], equalize block sums by
// cheapest unit moves, then repair Fulkerson-Chen-Anstee violations by paired
// unit decrements.  Feasible but not necessarily minimal; deterministic.
DenoiseResult denoise_l1_heuristic(const IntegerBiSequence& z, Eigen::Index n);

// Enumerates every digraph on n <= kDenoiseOracleMaxNodes nodes and returns
// the L1-closest bi-degree sequence (ties: lexicographically smallest).
// Throws std::domain_error for larger n.
DenoiseResult brute_force_denoise_oracle(const IntegerBiSequence& z, Eigen::Index n);

}  // namespace ldpnet

#endif  // LDPNET_DENOISE_HPP_
