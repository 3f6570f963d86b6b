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

#ifndef LDPNET_ESTIMATION_HPP_
#define LDPNET_ESTIMATION_HPP_

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

#include "ldpnet/graph.hpp"
#include "ldpnet/p0.hpp"

namespace ldpnet {

struct SolverOptions {
  // L-inf bound on the moment residual at convergence.
  double tolerance = 1e-8;
  int max_iterations = 5000;
  // Divergence guard on ||theta||_inf.
  double parameter_bound = 30.0;
  // Step fraction applied to fixed-point updates; drops to 0.5 automatically
  // when the residual oscillates.
  double damping = 1.0;
};

enum class FailureReason { none, degree_out_of_range, diverged, max_iterations };

const char* to_string(FailureReason reason);

struct FitResult {
  Theta theta_hat;
  bool converged = false;
  int iterations = 0;
  double residual_inf = std::numeric_limits<double>::infinity();
  FailureReason failure_reason = FailureReason::none;
};

// Inverts the expected distortion of the flipping mechanism:
// (d' - (n-1)(1-p)) / (2p-1).  Identity at p = 1.  Throws std::domain_error
// for p <= 1/2 (the mechanism is non-invertible at p = 1/2).
Eigen::VectorXd debias_sequence(const Eigen::VectorXd& dprime, double p, Eigen::Index n);
Eigen::VectorXd debias_sequence(const Eigen::VectorXi& dprime, double p, Eigen::Index n);

// Solves the 2n-1 moment equations for a length-2n target (out block then in
// block) observed through a flip-keep probability p: internally debiases the
// target to the p = 1 scale and runs the damped fixed-point iteration
//   alpha_i <- log(t_i) - log sum_{k != i} e^{beta_k} / (1 + e^{alpha_i + beta_k})
// (and symmetrically for beta_1..beta_{n-1}), starting from zero with beta_n
// pinned, with windowed extrapolation over the sweeps to sum their geometric
// tail.  Convergence is declared on the L-inf norm of the p-scale residual.
// fit_mle / fit_laplace / fit_ldp are thin wrappers.
FitResult solve_p0(const Eigen::VectorXd& target, double p, const SolverOptions& options = {});

FitResult fit_mle(const BiDegreeSequence& d, const SolverOptions& options = {});
FitResult fit_laplace(const IntegerBiSequence& z, const SolverOptions& options = {});
FitResult fit_ldp(const BiDegreeSequence& dprime, double epsilon, const SolverOptions& options = {});

// First 2n-1 coordinates of the moment system:
//   F_i = sum_{k != i} (p e^{alpha_i+beta_k} + 1-p) / (1 + e^{alpha_i+beta_k}) - target_i.
Eigen::VectorXd residual_F(const Theta& theta, const Eigen::VectorXd& target, double p);

// All 2n equations, taking raw alpha/beta (no pin enforced); used by the
// solver, the variance formulas, and symmetry tests.
Eigen::VectorXd moment_residual_full(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& target, double p);

// Jacobian of residual_F: symmetric (2n-1) x (2n-1), block structure
// [[diag, W], [W^T, diag]] with w_ij = (2p-1) e^{alpha_i+beta_j} / (1+e^{alpha_i+beta_j})^2.
Eigen::MatrixXd jacobian_V(const Theta& theta, double p);

// All 2n diagonal entries v_ii, including the 2n-th one recovered by the
// row-completion rule (it equals the dropped in-degree equation's diagonal).
Eigen::VectorXd v_diagonal(const Theta& theta, double p);

// Structural membership test for the matrix class the approximation S
// assumes: diagonal inner blocks, symmetric nonnegative cross block with a
// zero sub-diagonal, and diagonally dominant rows.
bool in_Ln_class(const Eigen::MatrixXd& V, double tol = 1e-9);

// v_{2n,2n} recovered from an explicit (2n-1)-dimensional matrix by the
// row-completion rule.
double row_completion_v2n2n(const Eigen::MatrixXd& V);

// Entrywise approximate inverse of V: s_ij = delta_ij / v_ii +- 1 / v_{2n,2n}.
// Throws std::domain_error when V fails the structural predicate.
Eigen::MatrixXd approx_inverse_S(const Eigen::MatrixXd& V);

// Variances of the flipped degrees, all 2n coordinates:
//   sigma_i^2 = sum_{k != i} [p e^x + 1-p][(1-p) e^x + p] / (1+e^x)^2.
// Collapses to v_diagonal at p = 1.
Eigen::VectorXd sigma_squared(const Theta& theta, double p);

// Upper-left k x k block of the asymptotic covariance: diagonal blocks
// sigma_{2n}^2/v_{2n,2n}^2 + diag(sigma_i^2/v_ii^2), off entries
// -sigma_{2n}^2/v_{2n,2n}^2 between the alpha and beta blocks.
Eigen::MatrixXd asymptotic_covariance(const Theta& theta, double p, Eigen::Index k);

enum class StatKind { xi, zeta, eta };

// Standardized contrasts with plug-in variance estimates evaluated at
// theta_hat; pairs use 1-based node indices.  Throws std::domain_error on a
// nonpositive denominator.
std::vector<double> standardized_stats(const Theta& theta_hat, const Theta& theta_star, double p,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       StatKind kind);

// s_n^2 = (2n-1) * 2 e^{-eps/2} / (1 - e^{-eps/2})^2, the variance of the
// degree-sum noise contrast under the discrete Laplace release.
double laplace_variance_s_n2(Eigen::Index n, double epsilon);

struct VarianceReport {
  Eigen::VectorXd v_diag;                    // 2n
  double v_2n_2n = 0.0;
  Eigen::VectorXd sigma2;                    // 2n
  Eigen::VectorXd per_coordinate_variance;   // 2n-1
  Eigen::MatrixXd covariance_block;          // k x k
};

VarianceReport variance_report(const Theta& theta, double p, Eigen::Index k);

}  // namespace ldpnet

#endif  // LDPNET_ESTIMATION_HPP_
