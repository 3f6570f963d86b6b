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

#include "ldpnet/estimation.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ldpnet {

namespace {

// (p e^x + 1-p) / (1 + e^x) = (1-p) + (2p-1) * logistic(x).
inline double flipped_mean(double x, double p) { return (1.0 - p) + (2.0 * p - 1.0) * logistic(x); }

// ((1-p) e^x + p) / (1 + e^x) = p - (2p-1) * logistic(x).
inline double flipped_comean(double x, double p) { return p - (2.0 * p - 1.0) * logistic(x); }

// e^x / (1 + e^x)^2, the logistic derivative.
inline double logistic_deriv(double x) {
  const double s = logistic(x);
  return s * (1.0 - s);
}

void check_p(double p) {
  if (!(p > 0.5) || !(p <= 1.0)) {
    throw std::domain_error("flip-keep probability must lie in (1/2, 1]");
  }
}

}  // namespace

const char* to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::none: return "none";
    case FailureReason::degree_out_of_range: return "degree_out_of_range";
    case FailureReason::diverged: return "diverged";
    case FailureReason::max_iterations: return "max_iterations";
  }
  return "unknown";
}

Eigen::VectorXd debias_sequence(const Eigen::VectorXd& dprime, double p, Eigen::Index n) {
  check_p(p);
  if (dprime.size() != 2 * n) {
    throw std::invalid_argument("debias_sequence: expected a length-2n sequence");
  }
  const double shift = static_cast<double>(n - 1) * (1.0 - p);
  return (dprime.array() - shift) / (2.0 * p - 1.0);
}

Eigen::VectorXd debias_sequence(const Eigen::VectorXi& dprime, double p, Eigen::Index n) {
  return debias_sequence(dprime.cast<double>().eval(), p, n);
}

Eigen::VectorXd moment_residual_full(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& target, double p) {
  const auto n = alpha.size();
  Eigen::VectorXd f = -target;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == i) continue;
      const double m = flipped_mean(alpha[i] + beta[k], p);
      f[i] += m;
      f[n + k] += m;
    }
  }
  return f;
}

Eigen::VectorXd residual_F(const Theta& theta, const Eigen::VectorXd& target, double p) {
  validate_theta(theta);
  check_p(p);
  if (target.size() != 2 * theta.node_count()) {
    throw std::invalid_argument("residual_F: target must have length 2n");
  }
  return moment_residual_full(theta.alpha, theta.beta, target, p)
      .head(2 * theta.node_count() - 1);
}

FitResult solve_p0(const Eigen::VectorXd& target, double p, const SolverOptions& options) {
  check_p(p);
  if (target.size() % 2 != 0 || target.size() < 4) {
    throw std::invalid_argument("solve_p0: target must have even length 2n, n >= 2");
  }
  const Eigen::Index n = target.size() / 2;
  FitResult result;
  result.theta_hat = Theta::zeros(n);

  const Eigen::VectorXd t = debias_sequence(target, p, n);
  if ((t.array() <= 0.0).any() || (t.array() >= static_cast<double>(n - 1)).any()) {
    result.failure_reason = FailureReason::degree_out_of_range;
    return result;
  }
  const Eigen::VectorXd log_t = t.array().log();

  // The parameter bound keeps |alpha_i + beta_k| <= 60, so e^{alpha_i} e^{beta_k}
  // stays far below overflow and the factored forms below are safe; wild
  // extrapolation candidates at most produce inf/NaN residuals, which the
  // acceptance guard rejects.
  auto fast_residual_inf = [&](const Eigen::VectorXd& x) {
    const Eigen::ArrayXd ea = x.head(n).array().exp();
    const Eigen::ArrayXd eb = x.tail(n).array().exp();
    Eigen::ArrayXd out_sum(n);
    Eigen::ArrayXd in_sum = Eigen::ArrayXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::ArrayXd sig = ea[i] * eb;
      sig /= 1.0 + sig;
      sig[i] = 0.0;
      out_sum[i] = sig.sum();
      in_sum += sig;
    }
    const double base = static_cast<double>(n - 1) * (1.0 - p);
    const double slope = 2.0 * p - 1.0;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(base + slope * out_sum[i] - target[i]));
    }
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      worst = std::max(worst, std::abs(base + slope * in_sum[j] - target[n + j]));
    }
    return worst;
  };
  // One damped Gauss-Seidel sweep of the fixed-point update.
  auto sweep = [&](const Eigen::VectorXd& x, double damping) {
    Eigen::VectorXd next = x;
    auto alpha = next.head(n);
    auto beta = next.tail(n);
    {
      const Eigen::ArrayXd eb = beta.array().exp();
      for (Eigen::Index i = 0; i < n; ++i) {
        const double ea_i = std::exp(alpha[i]);
        const double sum = (eb / (1.0 + ea_i * eb)).sum() - eb[i] / (1.0 + ea_i * eb[i]);
        const double proposed = log_t[i] - std::log(sum);
        alpha[i] += damping * (proposed - alpha[i]);
      }
    }
    {
      const Eigen::ArrayXd ea = alpha.array().exp();
      for (Eigen::Index j = 0; j + 1 < n; ++j) {
        const double eb_j = std::exp(beta[j]);
        const double sum = (ea / (1.0 + eb_j * ea)).sum() - ea[j] / (1.0 + eb_j * ea[j]);
        const double proposed = log_t[n + j] - std::log(sum);
        beta[j] += damping * (proposed - beta[j]);
      }
    }
    return next;
  };

  // Anderson-extrapolated fixed-point iteration: the plain sweeps alone
  // contract, but their slowest mode decays like 1 - O(1/n) per sweep, which
  // cannot reach the tolerance within the iteration budget at desk sizes.
  // The window extrapolation sums that geometric tail; a candidate is
  // accepted only when it beats the plain sweep's residual, so the plain
  // dynamics (and the failure taxonomy) are preserved.
  constexpr int kWindow = 4;
  std::vector<Eigen::VectorXd> past_x, past_g;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * n);
  double damping = options.damping;
  double residual = fast_residual_inf(x);
  double best_residual = residual;
  int rises = 0;

  auto finish = [&](const Eigen::VectorXd& point) {
    result.theta_hat.alpha = point.head(n);
    result.theta_hat.beta = point.tail(n);
    result.residual_inf = moment_residual_full(result.theta_hat.alpha, result.theta_hat.beta,
                                               target, p)
                              .head(2 * n - 1)
                              .lpNorm<Eigen::Infinity>();
    result.converged = result.residual_inf <= options.tolerance;
    result.failure_reason =
        result.converged ? FailureReason::none : FailureReason::max_iterations;
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (residual <= options.tolerance) {
      finish(x);
      if (result.converged) return result;
      residual = result.residual_inf;  // fast path was optimistic; keep going
    }

    const Eigen::VectorXd g = sweep(x, damping);
    double residual_g = fast_residual_inf(g);
    past_x.push_back(x);
    past_g.push_back(g);
    if (static_cast<int>(past_x.size()) > kWindow + 1) {
      past_x.erase(past_x.begin());
      past_g.erase(past_g.begin());
    }

    Eigen::VectorXd next = g;
    double residual_next = residual_g;
    const int h = static_cast<int>(past_x.size()) - 1;
    if (h >= 1) {
      Eigen::MatrixXd delta_f(2 * n, h);
      for (int i = 0; i < h; ++i) {
        delta_f.col(i) = (past_g[i + 1] - past_x[i + 1]) - (past_g[i] - past_x[i]);
      }
      const Eigen::VectorXd f_last = past_g[h] - past_x[h];
      const Eigen::VectorXd gamma = delta_f.colPivHouseholderQr().solve(f_last);
      Eigen::VectorXd candidate = g;
      for (int i = 0; i < h; ++i) candidate -= gamma[i] * (past_g[i + 1] - past_g[i]);
      if (candidate.allFinite() &&
          candidate.lpNorm<Eigen::Infinity>() <= options.parameter_bound) {
        const double residual_candidate = fast_residual_inf(candidate);
        if (residual_candidate < residual_g) {
          next = candidate;
          residual_next = residual_candidate;
        }
      }
    }

    x = next;
    residual = residual_next;
    result.iterations = iter + 1;

    const double magnitude = x.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(magnitude) || magnitude > options.parameter_bound) {
      result.theta_hat.alpha = x.head(n);
      result.theta_hat.beta = x.tail(n);
      result.failure_reason = FailureReason::diverged;
      return result;
    }

    if (residual > best_residual) {
      if (++rises >= 2 && damping > 0.5) {
        damping = 0.5;
        rises = 0;
      }
    } else {
      best_residual = residual;
      rises = 0;
    }
  }

  finish(x);
  return result;
}

FitResult fit_mle(const BiDegreeSequence& d, const SolverOptions& options) {
  return solve_p0(d.stacked().cast<double>(), 1.0, options);
}

FitResult fit_laplace(const IntegerBiSequence& z, const SolverOptions& options) {
  return solve_p0(z.values.cast<double>(), 1.0, options);
}

FitResult fit_ldp(const BiDegreeSequence& dprime, double epsilon, const SolverOptions& options) {
  const double p = 1.0 / (1.0 + std::exp(-epsilon));
  return solve_p0(dprime.stacked().cast<double>(), p, options);
}

Eigen::MatrixXd jacobian_V(const Theta& theta, double p) {
  validate_theta(theta);
  check_p(p);
  const auto n = theta.node_count();
  const double scale = 2.0 * p - 1.0;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2 * n - 1, 2 * n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = scale * logistic_deriv(theta.alpha[i] + theta.beta[j]);
      v(i, i) += w;
      if (j + 1 < n) {
        v(n + j, n + j) += w;
        v(i, n + j) = w;
        v(n + j, i) = w;
      }
    }
  }
  return v;
}

Eigen::VectorXd v_diagonal(const Theta& theta, double p) {
  validate_theta(theta);
  check_p(p);
  const auto n = theta.node_count();
  const double scale = 2.0 * p - 1.0;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = scale * logistic_deriv(theta.alpha[i] + theta.beta[j]);
      diag[i] += w;
      diag[n + j] += w;
    }
  }
  return diag;
}

bool in_Ln_class(const Eigen::MatrixXd& V, double tol) {
  const Eigen::Index dim = V.rows();
  if (V.cols() != dim || dim < 3 || dim % 2 == 0) return false;
  const Eigen::Index n = (dim + 1) / 2;
  const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
  const double eps = tol * scale;

  if (((V - V.transpose()).cwiseAbs().maxCoeff()) > eps) return false;
  if (V.minCoeff() < -eps) return false;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && std::abs(V(i, j)) > eps) return false;
    }
  }
  for (Eigen::Index i = n; i < dim; ++i) {
    for (Eigen::Index j = n; j < dim; ++j) {
      if (i != j && std::abs(V(i, j)) > eps) return false;
    }
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(V(i, n + i)) > eps) return false;
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double off = V.row(i).sum() - V(i, i);
    if (V(i, i) < off - eps) return false;  // diagonal dominance
  }
  // Rows n..2n-2 are exactly saturated: v_ii equals the cross-column sum.
  for (Eigen::Index i = n; i < dim; ++i) {
    if (std::abs(V(i, i) - (V.col(i).sum() - V(i, i))) > eps) return false;
  }
  return true;
}

double row_completion_v2n2n(const Eigen::MatrixXd& V) {
  const Eigen::Index n = (V.rows() + 1) / 2;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += V(i, i) - (V.row(i).sum() - V(i, i));
  }
  return total;
}

Eigen::MatrixXd approx_inverse_S(const Eigen::MatrixXd& V) {
  if (!in_Ln_class(V)) {
    throw std::domain_error("approx_inverse_S: matrix lacks the required block structure");
  }
  const Eigen::Index dim = V.rows();
  const Eigen::Index n = (dim + 1) / 2;
  const double v2n2n = row_completion_v2n2n(V);
  Eigen::MatrixXd s(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const bool i_alpha = i < n;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const bool j_alpha = j < n;
      double value = (i_alpha == j_alpha ? 1.0 : -1.0) / v2n2n;
      if (i == j) value += 1.0 / V(i, i);
      s(i, j) = value;
    }
  }
  return s;
}

Eigen::VectorXd sigma_squared(const Theta& theta, double p) {
  validate_theta(theta);
  check_p(p);
  const auto n = theta.node_count();
  Eigen::VectorXd s2 = Eigen::VectorXd::Zero(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double x = theta.alpha[i] + theta.beta[j];
      const double term = flipped_mean(x, p) * flipped_comean(x, p);
      s2[i] += term;
      s2[n + j] += term;
    }
  }
  return s2;
}

Eigen::MatrixXd asymptotic_covariance(const Theta& theta, double p, Eigen::Index k) {
  const auto n = theta.node_count();
  if (k < 1 || k > 2 * n - 1) {
    throw std::invalid_argument("asymptotic_covariance: k must be in [1, 2n-1]");
  }
  const Eigen::VectorXd vd = v_diagonal(theta, p);
  const Eigen::VectorXd s2 = sigma_squared(theta, p);
  const double common = s2[2 * n - 1] / (vd[2 * n - 1] * vd[2 * n - 1]);
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const bool i_alpha = i < n;
    for (Eigen::Index j = 0; j < k; ++j) {
      const bool j_alpha = j < n;
      double value = (i_alpha == j_alpha ? 1.0 : -1.0) * common;
      if (i == j) value += s2[i] / (vd[i] * vd[i]);
      m(i, j) = value;
    }
  }
  return m;
}

std::vector<double> standardized_stats(const Theta& theta_hat, const Theta& theta_star, double p,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       StatKind kind) {
  validate_theta(theta_hat);
  validate_theta(theta_star);
  const auto n = theta_hat.node_count();
  if (theta_star.node_count() != n) {
    throw std::invalid_argument("standardized_stats: theta sizes differ");
  }
  const Eigen::VectorXd vd = v_diagonal(theta_hat, p);
  const Eigen::VectorXd s2 = sigma_squared(theta_hat, p);
  auto ratio = [&](Eigen::Index idx) { return s2[idx] / (vd[idx] * vd[idx]); };

  std::vector<double> stats;
  stats.reserve(pairs.size());
  for (const auto& [pi, pj] : pairs) {
    const Eigen::Index i = pi - 1, j = pj - 1;
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw std::invalid_argument("standardized_stats: pair index out of range");
    }
    double num = 0.0, den2 = 0.0;
    switch (kind) {
      case StatKind::xi:
        num = (theta_hat.alpha[i] - theta_hat.alpha[j]) - (theta_star.alpha[i] - theta_star.alpha[j]);
        den2 = ratio(i) + ratio(j);
        break;
      case StatKind::zeta:
        num = (theta_hat.alpha[i] + theta_hat.beta[j]) - (theta_star.alpha[i] + theta_star.beta[j]);
        den2 = ratio(i) + ratio(n + j);
        break;
      case StatKind::eta:
        num = (theta_hat.beta[i] - theta_hat.beta[j]) - (theta_star.beta[i] - theta_star.beta[j]);
        den2 = ratio(n + i) + ratio(n + j);
        break;
    }
    if (!(den2 > 0.0)) throw std::domain_error("standardized_stats: nonpositive variance estimate");
    stats.push_back(num / std::sqrt(den2));
  }
  return stats;
}

double laplace_variance_s_n2(Eigen::Index n, double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("laplace_variance_s_n2: epsilon must be positive");
  const double lambda = std::exp(-epsilon / 2.0);
  return static_cast<double>(2 * n - 1) * 2.0 * lambda / ((1.0 - lambda) * (1.0 - lambda));
}

VarianceReport variance_report(const Theta& theta, double p, Eigen::Index k) {
  const auto n = theta.node_count();
  VarianceReport report;
  report.v_diag = v_diagonal(theta, p);
  report.v_2n_2n = report.v_diag[2 * n - 1];
  report.sigma2 = sigma_squared(theta, p);
  const double common = report.sigma2[2 * n - 1] / (report.v_2n_2n * report.v_2n_2n);
  report.per_coordinate_variance.resize(2 * n - 1);
  for (Eigen::Index i = 0; i < 2 * n - 1; ++i) {
    report.per_coordinate_variance[i] =
        report.sigma2[i] / (report.v_diag[i] * report.v_diag[i]) + common;
  }
  report.covariance_block = asymptotic_covariance(theta, p, k);
  return report;
}

}  // namespace ldpnet
