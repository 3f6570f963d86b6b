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

#include "ldpnet/p0.hpp"

#include <cmath>
#include <stdexcept>

namespace ldpnet {

void validate_theta(const Theta& theta) {
  const auto n = theta.alpha.size();
  if (n < 2 || theta.beta.size() != n) {
    throw std::invalid_argument("Theta: alpha and beta must both have length n >= 2");
  }
  if (!theta.alpha.allFinite() || !theta.beta.allFinite()) {
    throw std::invalid_argument("Theta: entries must be finite");
  }
  if (theta.beta[n - 1] != 0.0) {
    throw std::invalid_argument("Theta: beta[n-1] must be pinned to 0");
  }
}

double edge_probability(const Theta& theta, Eigen::Index i, Eigen::Index j) {
  if (i == j) throw std::domain_error("edge_probability: i == j has no edge");
  return logistic(theta.alpha[i] + theta.beta[j]);
}

DirectedGraph sample_graph(const Theta& theta, Rng& rng) {
  validate_theta(theta);
  const auto n = theta.node_count();
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      adj(i, j) = rng.bernoulli(logistic(theta.alpha[i] + theta.beta[j])) ? 1 : 0;
    }
  }
  return DirectedGraph(std::move(adj));
}

double log_likelihood(const Theta& theta, const DirectedGraph& g) {
  validate_theta(theta);
  const auto n = g.node_count();
  if (theta.node_count() != n) {
    throw std::invalid_argument("log_likelihood: theta and graph sizes differ");
  }
  const BiDegreeSequence d = bi_degree_sequence(g);
  double value = theta.alpha.dot(d.out.cast<double>()) + theta.beta.dot(d.in.cast<double>());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      value -= softplus(theta.alpha[i] + theta.beta[j]);
    }
  }
  return value;
}

Theta linear_parameters(Eigen::Index n, double L) {
  if (n < 2) throw std::invalid_argument("linear_parameters: n >= 2 required");
  if (L < 0) throw std::invalid_argument("linear_parameters: L >= 0 required");
  Theta theta = Theta::zeros(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    theta.alpha[i] = static_cast<double>(n - 1 - i) * L / static_cast<double>(n - 1);
  }
  theta.beta = theta.alpha;
  theta.beta[n - 1] = 0.0;
  return theta;
}

}  // namespace ldpnet
