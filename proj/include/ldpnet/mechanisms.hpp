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

#ifndef LDPNET_MECHANISMS_HPP_
#define LDPNET_MECHANISMS_HPP_

#include <cstdint>
#include <vector>

#include "ldpnet/graph.hpp"
#include "ldpnet/rng.hpp"

namespace ldpnet {

// Privacy budget epsilon with the derived edge-flip keep probability
// p = 1/(1+e^-eps) and discrete Laplace scale lambda = e^{-eps/2}.  Keep and
// flip probabilities are stored from separate evaluations of the same
// expression so that keep/flip == e^eps holds to machine precision.
class PrivacyBudget {
 public:
  explicit PrivacyBudget(double epsilon);

  double epsilon() const { return epsilon_; }
  double keep_prob() const { return keep_; }
  double flip_prob() const { return flip_; }
  double laplace_scale() const { return lambda_; }

 private:
  double epsilon_;
  double keep_;
  double flip_;
  double lambda_;
};

// Joint randomized response on a dyad (a_ij, a_ji): stay with gamma1, move to
// each one-coordinate-differing state with gamma2, flip both with gamma3.
// Constraint: gamma1 + 2*gamma2 + gamma3 == 1, all nonnegative.
struct PairwiseFlipSpec {
  double gamma1;
  double gamma2;
  double gamma3;
};

// Throws std::domain_error when the probabilities are negative or the
// sum-to-one constraint is violated beyond 1e-12.
void validate_pairwise_spec(const PairwiseFlipSpec& spec);

// Keeps each off-diagonal entry with probability p and inverts it otherwise,
// independently; the diagonal stays zero.  Entries are drawn in row-major
// order, so the output is a deterministic function of (graph, budget, stream).
DirectedGraph edge_flip(const DirectedGraph& g, const PrivacyBudget& budget, Rng& rng);

// Perturbs each unordered pair {i, j} (i < j) jointly per the spec's dyad
// transition law; pairs are independent of each other.
DirectedGraph pairwise_edge_flip(const DirectedGraph& g, const PairwiseFlipSpec& spec, Rng& rng);

// True iff e^-eps <= gamma1/gamma2, gamma1/gamma3, gamma2/gamma3 <= e^eps;
// a zero denominator under a nonzero numerator fails the check.
bool verify_pairwise_ldp(const PairwiseFlipSpec& spec, double epsilon);

// Integer noise with pmf ((1-lambda)/(1+lambda)) * lambda^|x|, sampled as the
// difference of two independent geometric(1-lambda) draws (exact, no
// truncation).  Throws std::domain_error unless lambda is in (0, 1).
std::int64_t discrete_laplace_sample(double lambda, Rng& rng);

// Adds 2n independent discrete Laplace(lambda = e^{-eps/2}) noises, out block
// first then in block, index ascending.
IntegerBiSequence laplace_release(const BiDegreeSequence& d, const PrivacyBudget& budget, Rng& rng);

struct ComposedBudget {
  double epsilon = 0.0;
  // Set when the input list was empty (the sum 0 is then vacuous).
  bool empty_input = false;
};

// Sequential composition: budgets add.
ComposedBudget compose_budgets(const std::vector<double>& epsilons);

}  // namespace ldpnet

#endif  // LDPNET_MECHANISMS_HPP_
