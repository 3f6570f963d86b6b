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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ldpnet/estimation.hpp"
#include "ldpnet/graph.hpp"
#include "ldpnet/mechanisms.hpp"
#include "ldpnet/p0.hpp"
#include "ldpnet/rng.hpp"

using namespace ldpnet;

namespace {

Theta random_theta(Eigen::Index n, double scale, Rng& rng) {
  Theta theta = Theta::zeros(n);
  for (Eigen::Index i = 0; i < n; ++i) theta.alpha[i] = scale * (2.0 * rng.uniform() - 1.0);
  for (Eigen::Index i = 0; i + 1 < n; ++i) theta.beta[i] = scale * (2.0 * rng.uniform() - 1.0);
  return theta;
}

// Term-by-term long-double re-summation of the moment system, kept separate
// from the library implementation.
Eigen::VectorXd residual_oracle(const Theta& theta, const Eigen::VectorXd& target, double p) {
  const auto n = theta.node_count();
  Eigen::VectorXd f(2 * n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    long double sum = 0.0L;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == i) continue;
      const long double ex = expl(static_cast<long double>(theta.alpha[i]) + theta.beta[k]);
      sum += (static_cast<long double>(p) * ex + (1.0L - static_cast<long double>(p))) / (1.0L + ex);
    }
    f[i] = static_cast<double>(sum - static_cast<long double>(target[i]));
  }
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    long double sum = 0.0L;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == j) continue;
      const long double ex = expl(static_cast<long double>(theta.alpha[k]) + theta.beta[j]);
      sum += (static_cast<long double>(p) * ex + (1.0L - static_cast<long double>(p))) / (1.0L + ex);
    }
    f[n + j] = static_cast<double>(sum - static_cast<long double>(target[n + j]));
  }
  return f;
}

// Independent root finder: dense grid refinement on the free coordinates
// (alpha_1..alpha_n, beta_1..beta_{n-1}) minimizing the squared residual of
// the full moment system.  Returns the refined center.
Theta grid_refine_root(const Eigen::VectorXd& target, double p, Eigen::Index n, double half_width,
                       int rounds) {
  const Eigen::Index dim = 2 * n - 1;
  Eigen::VectorXd center = Eigen::VectorXd::Zero(dim);
  auto objective = [&](const Eigen::VectorXd& point) {
    Theta theta = Theta::zeros(n);
    theta.alpha = point.head(n);
    theta.beta.head(n - 1) = point.tail(n - 1);
    const Eigen::VectorXd f = residual_oracle(theta, target, p);
    return f.squaredNorm();
  };
  const double offsets[] = {-1.0, -0.5, 0.5, 1.0};
  double w = half_width;
  for (int round = 0; round < rounds; ++round) {
    for (int pass = 0; pass < 3; ++pass) {
      // coordinate stencil at this resolution
      for (Eigen::Index coord = 0; coord < dim; ++coord) {
        double best = objective(center);
        double best_offset = 0.0;
        for (double o : offsets) {
          Eigen::VectorXd candidate = center;
          candidate[coord] += o * w;
          const double value = objective(candidate);
          if (value < best) {
            best = value;
            best_offset = o * w;
          }
        }
        center[coord] += best_offset;
      }
      // composite shift moves along the shallow (alpha + c, beta - c) valley
      double best = objective(center);
      double best_shift = 0.0;
      for (double o : offsets) {
        Eigen::VectorXd candidate = center;
        candidate.head(n).array() += o * w;
        candidate.tail(n - 1).array() -= o * w;
        const double value = objective(candidate);
        if (value < best) {
          best = value;
          best_shift = o * w;
        }
      }
      center.head(n).array() += best_shift;
      center.tail(n - 1).array() -= best_shift;
    }
    w *= 0.5;
  }

  // polish the localized point with finite-difference Newton steps on the
  // oracle residual (still independent of the solver's update rule)
  auto residual_at = [&](const Eigen::VectorXd& point) {
    Theta theta = Theta::zeros(n);
    theta.alpha = point.head(n);
    theta.beta.head(n - 1) = point.tail(n - 1);
    return residual_oracle(theta, target, p);
  };
  const double h = 1e-6;
  for (int step = 0; step < 12; ++step) {
    const Eigen::VectorXd f = residual_at(center);
    if (f.lpNorm<Eigen::Infinity>() < 1e-12) break;
    Eigen::MatrixXd jac(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      Eigen::VectorXd up = center, down = center;
      up[col] += h;
      down[col] -= h;
      jac.col(col) = (residual_at(up) - residual_at(down)) / (2.0 * h);
    }
    center -= jac.partialPivLu().solve(f);
  }

  Theta theta = Theta::zeros(n);
  theta.alpha = center.head(n);
  theta.beta.head(n - 1) = center.tail(n - 1);
  return theta;
}

}  // namespace

TEST_CASE("debias_sequence hand values and errors") {
  const Eigen::Index n = 100;
  Eigen::VectorXd dprime = Eigen::VectorXd::Constant(2 * n, 60.0);

  CHECK(debias_sequence(dprime, 1.0, n) == dprime);

  const double p = 1.0 / (1.0 + std::exp(-2.0));
  const Eigen::VectorXd t = debias_sequence(dprime, p, n);
  const long double expected =
      (60.0L - 99.0L * (1.0L - static_cast<long double>(p))) / (2.0L * static_cast<long double>(p) - 1.0L);
  CHECK(t[0] == doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
  CHECK(t[0] == doctest::Approx(63.2866).epsilon(1e-4));

  CHECK_THROWS_AS(debias_sequence(dprime, 0.5, n), std::domain_error);
  CHECK_THROWS_AS(debias_sequence(dprime, 0.3, n), std::domain_error);
}

TEST_CASE("debiasing is unbiased over the flipping mechanism") {
  const Eigen::Index n = 40;
  Rng sampler(3);
  const DirectedGraph g = sample_graph(linear_parameters(n, 1.0), sampler);
  const BiDegreeSequence d = bi_degree_sequence(g);
  const PrivacyBudget budget(2.0);
  const int reps = 400;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(2 * n);
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(derive_seed(909, {std::uint64_t(rep)}));
    const DirectedGraph flipped = edge_flip(g, budget, rng);
    acc += debias_sequence(bi_degree_sequence(flipped).stacked(), budget.keep_prob(), n);
  }
  acc /= double(reps);
  // per-entry variance of the debiased degree is bounded by (n-1)/4 / (2p-1)^2
  const double p = budget.keep_prob();
  const double se = std::sqrt(double(n - 1) * 0.25 / double(reps)) / (2.0 * p - 1.0);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    CHECK(std::abs(acc[i] - double(d.stacked()[i])) < 4.0 * se);
  }
}

TEST_CASE("solve_p0 at the symmetric target returns zero immediately") {
  const Eigen::Index n = 12;
  const Eigen::VectorXd target = Eigen::VectorXd::Constant(2 * n, double(n - 1) / 2.0);
  const FitResult fit = solve_p0(target, 1.0);
  CHECK(fit.converged);
  CHECK(fit.iterations == 0);
  CHECK(fit.theta_hat.alpha.isZero());
  CHECK(fit.theta_hat.beta.isZero());
}

TEST_CASE("boundary targets fail with degree_out_of_range") {
  const Eigen::Index n = 6;
  Eigen::VectorXd target = Eigen::VectorXd::Constant(2 * n, 2.0);
  target[3] = 0.0;
  const FitResult zero_fit = solve_p0(target, 1.0);
  CHECK_FALSE(zero_fit.converged);
  CHECK(zero_fit.failure_reason == FailureReason::degree_out_of_range);

  target[3] = double(n - 1);
  const FitResult cap_fit = solve_p0(target, 1.0);
  CHECK(cap_fit.failure_reason == FailureReason::degree_out_of_range);

  IntegerBiSequence z;
  z.values = Eigen::VectorXi::Constant(2 * n, 2);
  z.values[1] = -3;
  CHECK(fit_laplace(z).failure_reason == FailureReason::degree_out_of_range);
}

TEST_CASE("infeasible interior targets are detected at runtime") {
  Eigen::VectorXd target(8);
  target << 2.9, 2.9, 0.1, 0.1, 0.1, 0.1, 2.9, 2.9;
  const FitResult fit = solve_p0(target, 1.0);
  CHECK_FALSE(fit.converged);
  CHECK((fit.failure_reason == FailureReason::diverged ||
         fit.failure_reason == FailureReason::max_iterations));
}

TEST_CASE("fit_mle satisfies the solver contract on sampled graphs") {
  Rng rng(61);
  int converged = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 20 + (trial % 3) * 5;
    const DirectedGraph g = sample_graph(random_theta(n, 0.4, rng), rng);
    const FitResult fit = fit_mle(bi_degree_sequence(g));
    if (!fit.converged) continue;
    ++converged;
    CHECK(fit.theta_hat.beta[n - 1] == 0.0);
    const Eigen::VectorXd f =
        residual_F(fit.theta_hat, bi_degree_sequence(g).stacked().cast<double>(), 1.0);
    CHECK(f.lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK(fit.residual_inf <= 1e-8);
  }
  CHECK(converged >= 25);
}

TEST_CASE("fit_mle and solve_p0 share the code path; huge-epsilon LDP degenerates to it") {
  Rng rng(67);
  const DirectedGraph g = sample_graph(Theta::zeros(25), rng);
  const BiDegreeSequence d = bi_degree_sequence(g);
  const FitResult mle = fit_mle(d);
  const FitResult direct = solve_p0(d.stacked().cast<double>(), 1.0);
  CHECK(mle.converged);
  CHECK(mle.iterations == direct.iterations);
  CHECK(mle.theta_hat.alpha == direct.theta_hat.alpha);

  const FitResult ldp = fit_ldp(d, 80.0);
  CHECK(ldp.converged);
  CHECK(ldp.iterations == mle.iterations);
  CHECK((ldp.theta_hat.alpha - mle.theta_hat.alpha).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK((ldp.theta_hat.beta - mle.theta_hat.beta).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("solver agrees with the grid-refinement root oracle") {
  // symmetric n = 3 case: the all-ones bi-degree sequence pins theta = 0
  Eigen::VectorXd ones = Eigen::VectorXd::Constant(6, 1.0);
  const FitResult sym = solve_p0(ones, 1.0);
  CHECK(sym.converged);
  CHECK(sym.theta_hat.alpha.lpNorm<Eigen::Infinity>() < 1e-9);
  const Theta sym_oracle = grid_refine_root(ones, 1.0, 3, 4.0, 12);
  CHECK((sym.theta_hat.alpha - sym_oracle.alpha).lpNorm<Eigen::Infinity>() < 1e-6);

  // interior n = 4 fixtures, found by sampling until all degrees are interior
  Rng rng(71);
  int tested = 0;
  while (tested < 3) {
    const DirectedGraph g = sample_graph(Theta::zeros(4), rng);
    const BiDegreeSequence d = bi_degree_sequence(g);
    const Eigen::VectorXi stacked = d.stacked();
    if (stacked.minCoeff() < 1 || stacked.maxCoeff() > 2) continue;
    const FitResult fit = fit_mle(d);
    if (!fit.converged) continue;
    ++tested;
    const Theta oracle = grid_refine_root(stacked.cast<double>(), 1.0, 4, 4.0, 12);
    // the oracle must itself sit on the root
    CHECK(residual_oracle(oracle, stacked.cast<double>(), 1.0).lpNorm<Eigen::Infinity>() < 1e-5);
    CHECK((fit.theta_hat.alpha - oracle.alpha).lpNorm<Eigen::Infinity>() < 1e-6);
    CHECK((fit.theta_hat.beta - oracle.beta).lpNorm<Eigen::Infinity>() < 1e-6);
  }

  // a debiased p < 1 system is the same root problem after debiasing
  const double p = PrivacyBudget(2.0).keep_prob();
  Eigen::VectorXd flipped_target =
      (ones.array() * (2.0 * p - 1.0)) + 2.0 * (1.0 - p);  // n = 3: (n-1)(1-p) shift
  const FitResult ldp = solve_p0(flipped_target, p);
  CHECK(ldp.converged);
  CHECK(ldp.theta_hat.alpha.lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("residual_F matches the long-double oracle") {
  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 4;
    const Theta theta = random_theta(n, 1.5, rng);
    Eigen::VectorXd target(2 * n);
    for (Eigen::Index i = 0; i < 2 * n; ++i) target[i] = 3.0 * rng.uniform();
    const double p = trial % 2 ? 1.0 : 0.8;
    const Eigen::VectorXd fast = residual_F(theta, target, p);
    const Eigen::VectorXd slow = residual_oracle(theta, target, p);
    CHECK((fast - slow).lpNorm<Eigen::Infinity>() < 1e-12);
  }
  // exact zero at the symmetric point
  const Theta zeros = Theta::zeros(5);
  const Eigen::VectorXd target = Eigen::VectorXd::Constant(10, 2.0);
  CHECK(residual_F(zeros, target, 1.0).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("full moment system is invariant under (alpha + c, beta - c)") {
  Rng rng(79);
  const Eigen::Index n = 6;
  const Theta theta = random_theta(n, 1.0, rng);
  Eigen::VectorXd target(2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) target[i] = 4.0 * rng.uniform();
  for (double p : {1.0, 0.85}) {
    const Eigen::VectorXd base = moment_residual_full(theta.alpha, theta.beta, target, p);
    for (double c : {0.3, -1.2, 2.0}) {
      const Eigen::VectorXd shifted = moment_residual_full(
          theta.alpha.array() + c, theta.beta.array() - c, target, p);
      CHECK((base - shifted).lpNorm<Eigen::Infinity>() < 1e-11);
    }
  }
}

TEST_CASE("jacobian_V closed form at zero and structure") {
  const Eigen::Index n = 6;
  const Theta zeros = Theta::zeros(n);
  const Eigen::MatrixXd v = jacobian_V(zeros, 1.0);
  CHECK(v.rows() == 2 * n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    CHECK(v(i, i) == doctest::Approx(double(n - 1) / 4.0));
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      CHECK(v(i, n + j) == doctest::Approx(i == j ? 0.0 : 0.25));
    }
  }
  CHECK(in_Ln_class(v));
  CHECK(row_completion_v2n2n(v) == doctest::Approx(double(n - 1) / 4.0));
  // v_diagonal completes the dropped coordinate with the same value
  const Eigen::VectorXd diag = v_diagonal(zeros, 1.0);
  CHECK(diag[2 * n - 1] == doctest::Approx(double(n - 1) / 4.0));
}

TEST_CASE("jacobian_V matches central differences of residual_F") {
  Rng rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 3 + trial % 6;
    const Theta theta = random_theta(n, 1.0, rng);
    const double p = trial % 2 ? 1.0 : 0.6 + 0.4 * rng.uniform();
    const Eigen::VectorXd target = Eigen::VectorXd::Zero(2 * n);
    const Eigen::MatrixXd v = jacobian_V(theta, p);
    CHECK(in_Ln_class(v));

    const double h = 1e-6;
    const Eigen::Index dim = 2 * n - 1;
    for (Eigen::Index col = 0; col < dim; ++col) {
      Theta up = theta, down = theta;
      if (col < n) {
        up.alpha[col] += h;
        down.alpha[col] -= h;
      } else {
        up.beta[col - n] += h;
        down.beta[col - n] -= h;
      }
      const Eigen::VectorXd fd =
          (residual_F(up, target, p) - residual_F(down, target, p)) / (2.0 * h);
      for (Eigen::Index row = 0; row < dim; ++row) {
        const double analytic = v(row, col);
        if (std::abs(analytic) > 1e-8) {
          CHECK(fd[row] == doctest::Approx(analytic).epsilon(1e-5));
        } else {
          CHECK(std::abs(fd[row]) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("approx_inverse_S entries and quality") {
  const Eigen::Index n = 100;
  const Theta zeros = Theta::zeros(n);
  const Eigen::MatrixXd v = jacobian_V(zeros, 1.0);
  const Eigen::MatrixXd s = approx_inverse_S(v);
  const double v2n2n = row_completion_v2n2n(v);
  // spot-check the closed form
  CHECK(s(0, 0) == doctest::Approx(1.0 / v(0, 0) + 1.0 / v2n2n));
  CHECK(s(0, 1) == doctest::Approx(1.0 / v2n2n));
  CHECK(s(0, n) == doctest::Approx(-1.0 / v2n2n));
  CHECK(s(n, n) == doctest::Approx(1.0 / v(n, n) + 1.0 / v2n2n));

  const Eigen::MatrixXd residual =
      s * v - Eigen::MatrixXd::Identity(2 * n - 1, 2 * n - 1);
  CHECK(residual.cwiseAbs().maxCoeff() <= 0.02);
}

TEST_CASE("approx_inverse_S approaches the dense inverse") {
  Rng rng(89);
  for (Eigen::Index n : {3, 4, 6}) {
    const Theta theta = random_theta(n, 0.5, rng);
    const Eigen::MatrixXd v = jacobian_V(theta, 0.9);
    const Eigen::MatrixXd s = approx_inverse_S(v);
    const Eigen::MatrixXd inverse = v.inverse();
    const double gap = (s - inverse).cwiseAbs().maxCoeff();
    const double scale = inverse.cwiseAbs().maxCoeff();
    // crude approximation at desk sizes; the gap stays well under the
    // magnitude of the inverse itself and shrinks with n (measured)
    CHECK(gap < 0.8 * scale);
  }
  Eigen::MatrixXd not_structured = Eigen::MatrixXd::Random(5, 5);
  CHECK_THROWS_AS(approx_inverse_S(not_structured), std::domain_error);
}

TEST_CASE("sigma_squared collapse, symmetry and domination") {
  const Eigen::Index n = 9;
  const Theta zeros = Theta::zeros(n);
  const Eigen::VectorXd at_one = sigma_squared(zeros, 1.0);
  const Eigen::VectorXd diag = v_diagonal(zeros, 1.0);
  CHECK((at_one - diag).lpNorm<Eigen::Infinity>() < 1e-14);
  for (double p : {0.6, 0.8, 0.99}) {
    const Eigen::VectorXd s2 = sigma_squared(zeros, p);
    CHECK(s2[0] == doctest::Approx(double(n - 1) / 4.0));
  }

  Rng rng(97);
  for (int trial = 0; trial < 50; ++trial) {
    const Theta theta = random_theta(5, 1.0, rng);
    const double p = 0.55 + 0.44 * rng.uniform();
    const Eigen::VectorXd s2 = sigma_squared(theta, p);
    const Eigen::VectorXd vd = v_diagonal(theta, p);
    for (Eigen::Index i = 0; i < s2.size(); ++i) {
      CHECK(s2[i] > vd[i]);  // strict for p < 1
    }
    const Eigen::VectorXd s2_at_one = sigma_squared(theta, 1.0);
    const Eigen::VectorXd vd_at_one = v_diagonal(theta, 1.0);
    CHECK((s2_at_one - vd_at_one).lpNorm<Eigen::Infinity>() < 1e-14);
  }
}

TEST_CASE("asymptotic_covariance hand values and ordering") {
  const Eigen::Index n = 100;
  const Theta zeros = Theta::zeros(n);
  const Eigen::MatrixXd m1 = asymptotic_covariance(zeros, 1.0, 5);
  CHECK(m1.rows() == 5);
  for (Eigen::Index i = 0; i < 5; ++i) {
    CHECK(m1(i, i) == doctest::Approx(4.0 / 99.0 + 4.0 / 99.0).epsilon(1e-12));
  }
  const double p = PrivacyBudget(2.0).keep_prob();
  const Eigen::MatrixXd mp = asymptotic_covariance(zeros, p, 5);
  for (Eigen::Index i = 0; i < 5; ++i) {
    CHECK(mp(i, i) > m1(i, i));
  }
  CHECK_THROWS_AS(asymptotic_covariance(zeros, 1.0, 2 * n), std::invalid_argument);
}

TEST_CASE("standardized statistics vanish at the truth and match a recomputation") {
  Rng rng(101);
  const Eigen::Index n = 6;
  const Theta star = random_theta(n, 0.7, rng);
  const std::vector<std::pair<int, int>> pairs = {{1, 2}, {3, 4}, {5, 6}};
  for (StatKind kind : {StatKind::xi, StatKind::zeta, StatKind::eta}) {
    for (double value : standardized_stats(star, star, 0.9, pairs, kind)) {
      CHECK(value == 0.0);
    }
  }

  // spreadsheet-style recomputation of xi_{1,2} on a hand case
  const Eigen::Index n3 = 3;
  Theta hat = Theta::zeros(n3), truth = Theta::zeros(n3);
  hat.alpha << 0.4, -0.2, 0.1;
  hat.beta << 0.3, -0.1, 0.0;
  truth.alpha << 0.1, 0.0, 0.0;
  const double p = 0.8;
  const auto xi = standardized_stats(hat, truth, p, {{1, 2}}, StatKind::xi);

  auto w = [&](double x) {
    const long double ex = expl(static_cast<long double>(x));
    return static_cast<double>((2.0L * 0.8L - 1.0L) * ex / ((1.0L + ex) * (1.0L + ex)));
  };
  auto s2term = [&](double x) {
    const long double ex = expl(static_cast<long double>(x));
    const long double up = 0.8L * ex + 0.2L;
    const long double dn = 0.2L * ex + 0.8L;
    return static_cast<double>(up * dn / ((1.0L + ex) * (1.0L + ex)));
  };
  const double v11 = w(hat.alpha[0] + hat.beta[1]) + w(hat.alpha[0] + hat.beta[2]);
  const double v22 = w(hat.alpha[1] + hat.beta[0]) + w(hat.alpha[1] + hat.beta[2]);
  const double s11 = s2term(hat.alpha[0] + hat.beta[1]) + s2term(hat.alpha[0] + hat.beta[2]);
  const double s22 = s2term(hat.alpha[1] + hat.beta[0]) + s2term(hat.alpha[1] + hat.beta[2]);
  const double expected = ((hat.alpha[0] - hat.alpha[1]) - (truth.alpha[0] - truth.alpha[1])) /
                          std::sqrt(s11 / (v11 * v11) + s22 / (v22 * v22));
  CHECK(xi[0] == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("laplace_variance_s_n2 closed form") {
  const double direct = laplace_variance_s_n2(100, 2.0);
  const long double lam = expl(-1.0L);
  const long double expected = 199.0L * 2.0L * lam / ((1.0L - lam) * (1.0L - lam));
  CHECK(direct == doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
  CHECK(direct == doctest::Approx(366.43).epsilon(1e-3));
  CHECK(laplace_variance_s_n2(100, 100.0) < 1e-19);

  // equals (2n-1) times the variance of a single draw
  const double lambda = std::exp(-1.0);
  const double one_draw = 2.0 * lambda / ((1.0 - lambda) * (1.0 - lambda));
  CHECK(laplace_variance_s_n2(100, 2.0) == doctest::Approx(199.0 * one_draw));
}

TEST_CASE("variance_report invariants") {
  Rng rng(103);
  const Theta theta = random_theta(7, 0.8, rng);
  for (double p : {1.0, 0.9, 0.7}) {
    const VarianceReport report = variance_report(theta, p, 5);
    CHECK(report.v_diag.size() == 14);
    CHECK(report.v_diag.minCoeff() > 0.0);
    CHECK(report.v_2n_2n == report.v_diag[13]);
    for (Eigen::Index i = 0; i < 14; ++i) {
      CHECK(report.sigma2[i] >= report.v_diag[i] - 1e-12);
    }
    CHECK(report.per_coordinate_variance.size() == 13);
    CHECK(report.covariance_block.rows() == 5);
    for (Eigen::Index i = 0; i < 13; ++i) {
      CHECK(report.per_coordinate_variance[i] ==
            doctest::Approx(report.sigma2[i] / (report.v_diag[i] * report.v_diag[i]) +
                            report.sigma2[13] / (report.v_2n_2n * report.v_2n_2n)));
    }
  }
}
