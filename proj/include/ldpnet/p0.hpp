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

#ifndef LDPNET_P0_HPP_
#define LDPNET_P0_HPP_

#include <Eigen/Core>

#include "ldpnet/graph.hpp"
#include "ldpnet/rng.hpp"

namespace ldpnet {

// Degree parameters of the p0 model: alpha[i] is the outgoingness of node i,
// beta[j] the incomingness of node j.  beta[n-1] is pinned to zero for
// identifiability; all solvers keep it constant.
struct Theta {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;

  Eigen::Index node_count() const { return alpha.size(); }

  static Theta zeros(Eigen::Index n) {
    return Theta{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  }
};

// Checks matching lengths, finite entries, and the beta[n-1] == 0 pin; throws
// std::invalid_argument on violation.
void validate_theta(const Theta& theta);

// log(1 + e^x), overflow-free.
inline double softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// e^x / (1 + e^x), overflow-free.
inline double logistic(double x) {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

// P(a_ij = 1) = logistic(alpha_i + beta_j).  Throws std::domain_error for
// i == j (the model has no self-loops).
double edge_probability(const Theta& theta, Eigen::Index i, Eigen::Index j);

// Draws every off-diagonal entry independently Bernoulli(edge_probability),
// row-major order; deterministic given the stream.
DirectedGraph sample_graph(const Theta& theta, Rng& rng);

// sum_i alpha_i d_i^+ + sum_j beta_j d_j^-  -  sum_{i != j} log(1 + e^{alpha_i + beta_j}).
double log_likelihood(const Theta& theta, const DirectedGraph& g);

// Simulation design: alpha_{i+1} = (n-1-i) L / (n-1) for i = 0..n-1, so alpha
// descends linearly from L to 0; beta_i = alpha_i for i < n and beta_n = 0.
Theta linear_parameters(Eigen::Index n, double L);

}  // namespace ldpnet

#endif  // LDPNET_P0_HPP_
