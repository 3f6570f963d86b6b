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

#include "ldpnet/mechanisms.hpp"

#include <cmath>
#include <stdexcept>

namespace ldpnet {

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::domain_error("PrivacyBudget: epsilon must be positive and finite");
  }
  const double t = std::exp(-epsilon);
  keep_ = 1.0 / (1.0 + t);
  flip_ = t / (1.0 + t);
  lambda_ = std::exp(-epsilon / 2.0);
}

void validate_pairwise_spec(const PairwiseFlipSpec& spec) {
  if (spec.gamma1 < 0.0 || spec.gamma2 < 0.0 || spec.gamma3 < 0.0) {
    throw std::domain_error("PairwiseFlipSpec: probabilities must be nonnegative");
  }
  const double sum = spec.gamma1 + 2.0 * spec.gamma2 + spec.gamma3;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::domain_error("PairwiseFlipSpec: gamma1 + 2*gamma2 + gamma3 must be 1");
  }
}

DirectedGraph edge_flip(const DirectedGraph& g, const PrivacyBudget& budget, Rng& rng) {
  const auto n = g.node_count();
  const double p = budget.keep_prob();
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool keep = rng.bernoulli(p);
      const std::uint8_t a = g.adjacency()(i, j);
      adj(i, j) = keep ? a : static_cast<std::uint8_t>(1 - a);
    }
  }
  return DirectedGraph(std::move(adj));
}

DirectedGraph pairwise_edge_flip(const DirectedGraph& g, const PairwiseFlipSpec& spec, Rng& rng) {
  validate_pairwise_spec(spec);
  const auto n = g.node_count();
  AdjacencyMatrix adj = g.adjacency();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double u = rng.uniform();
      if (u < spec.gamma1) {
        continue;  // dyad kept
      } else if (u < spec.gamma1 + spec.gamma2) {
        adj(i, j) = 1 - adj(i, j);
      } else if (u < spec.gamma1 + 2.0 * spec.gamma2) {
        adj(j, i) = 1 - adj(j, i);
      } else {
        adj(i, j) = 1 - adj(i, j);
        adj(j, i) = 1 - adj(j, i);
      }
    }
  }
  return DirectedGraph(std::move(adj));
}

namespace {

// Checks e^-eps <= num/den <= e^eps, treating 0/0 as 1.
bool ratio_within(double num, double den, double epsilon) {
  if (den == 0.0) return num == 0.0;
  if (num == 0.0) return false;  // ratio 0 < e^-eps for finite eps
  const double r = num / den;
  return r >= std::exp(-epsilon) && r <= std::exp(epsilon);
}

}  // namespace

bool verify_pairwise_ldp(const PairwiseFlipSpec& spec, double epsilon) {
  validate_pairwise_spec(spec);
  if (epsilon < 0.0) return false;
  return ratio_within(spec.gamma1, spec.gamma2, epsilon) &&
         ratio_within(spec.gamma1, spec.gamma3, epsilon) &&
         ratio_within(spec.gamma2, spec.gamma3, epsilon);
}

std::int64_t discrete_laplace_sample(double lambda, Rng& rng) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::domain_error("discrete_laplace_sample: lambda must be in (0, 1)");
  }
  const std::int64_t g1 = rng.geometric(lambda);
  const std::int64_t g2 = rng.geometric(lambda);
  return g1 - g2;
}

IntegerBiSequence laplace_release(const BiDegreeSequence& d, const PrivacyBudget& budget,
                                  Rng& rng) {
  const auto n = d.node_count();
  const double lambda = budget.laplace_scale();
  IntegerBiSequence z;
  z.values.resize(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z.values[i] = d.out[i] + static_cast<int>(discrete_laplace_sample(lambda, rng));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    z.values[n + i] = d.in[i] + static_cast<int>(discrete_laplace_sample(lambda, rng));
  }
  return z;
}

ComposedBudget compose_budgets(const std::vector<double>& epsilons) {
  if (epsilons.empty()) return ComposedBudget{0.0, true};
  double sum = 0.0;
  for (double e : epsilons) {
    if (!(e > 0.0)) throw std::domain_error("compose_budgets: budgets must be positive");
    sum += e;
  }
  return ComposedBudget{sum, false};
}

}  // namespace ldpnet
