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

#include "ldpnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "ldpnet/denoise.hpp"
#include "ldpnet/mechanisms.hpp"
#include "ldpnet/rng.hpp"
#include "ldpnet/stats.hpp"

namespace ldpnet {

namespace {

using nlohmann::json;

// Stream tags: 0 draws the graph for a repetition, 1 + mechanism draws the
// mechanism noise.  Mechanism tags are fixed so adding or removing mechanisms
// from a config never shifts another mechanism's stream.
constexpr std::uint64_t kGraphStream = 0;

std::uint64_t mechanism_tag(Mechanism m) {
  switch (m) {
    case Mechanism::laplace: return 1;
    case Mechanism::denoised_laplace: return 2;
    case Mechanism::edge_flip: return 3;
  }
  return 0;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

const char* to_string(StatKind kind) {
  switch (kind) {
    case StatKind::xi: return "xi";
    case StatKind::zeta: return "zeta";
    case StatKind::eta: return "eta";
  }
  return "unknown";
}

int linf_int(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

const char* to_string(Mechanism m) {
  switch (m) {
    case Mechanism::laplace: return "laplace";
    case Mechanism::denoised_laplace: return "denoised_laplace";
    case Mechanism::edge_flip: return "edge_flip";
  }
  return "unknown";
}

double EpsilonSchedule::resolve(Eigen::Index n) const {
  switch (kind) {
    case Kind::fixed: return value;
    case Kind::logn_over_n_quarter: return std::log(double(n)) / std::pow(double(n), 0.25);
    case Kind::logn_over_n_half: return std::log(double(n)) / std::sqrt(double(n));
  }
  return value;
}

std::string EpsilonSchedule::label() const {
  switch (kind) {
    case Kind::fixed: return fmt(value);
    case Kind::logn_over_n_quarter: return "logn_q";
    case Kind::logn_over_n_half: return "logn_h";
  }
  return "?";
}

EpsilonSchedule EpsilonSchedule::parse(const std::string& token) {
  if (token == "logn_q") return {Kind::logn_over_n_quarter, 0.0};
  if (token == "logn_h") return {Kind::logn_over_n_half, 0.0};
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos == token.size() && v > 0) return fixed(v);
  } catch (const std::exception&) {
  }
  throw std::runtime_error("epsilon spec must be a positive number, 'logn_q' or 'logn_h': " +
                           token);
}

double LSchedule::resolve(Eigen::Index n) const {
  switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::loglog_n: return std::log(std::log(double(n)));
    case Kind::sqrt_log_n: return std::sqrt(std::log(double(n)));
    case Kind::log_n: return std::log(double(n));
    case Kind::fixed: return value;
  }
  return value;
}

std::string LSchedule::label() const {
  switch (kind) {
    case Kind::zero: return "zero";
    case Kind::loglog_n: return "loglog_n";
    case Kind::sqrt_log_n: return "sqrt_log_n";
    case Kind::log_n: return "log_n";
    case Kind::fixed: return fmt(value);
  }
  return "?";
}

LSchedule LSchedule::parse(const std::string& token) {
  if (token == "zero") return {Kind::zero, 0.0};
  if (token == "loglog_n") return {Kind::loglog_n, 0.0};
  if (token == "sqrt_log_n") return {Kind::sqrt_log_n, 0.0};
  if (token == "log_n") return {Kind::log_n, 0.0};
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos == token.size() && v >= 0) return fixed(v);
  } catch (const std::exception&) {
  }
  throw std::runtime_error(
      "L spec must be a nonnegative number or one of zero/loglog_n/sqrt_log_n/log_n: " + token);
}

SimConfig SimConfig::from_json(const std::string& text) {
  const json j = json::parse(text);
  SimConfig cfg;
  cfg.n_values = j.at("n_values").get<std::vector<int>>();
  for (int n : cfg.n_values) {
    if (n < 2) throw std::runtime_error("SimConfig: n_values must all be >= 2");
  }
  auto as_tokens = [](const json& node) {
    std::vector<std::string> tokens;
    auto push = [&tokens](const json& item) {
      tokens.push_back(item.is_string() ? item.get<std::string>() : fmt(item.get<double>()));
    };
    if (node.is_array()) {
      for (const auto& item : node) push(item);
    } else {
      push(node);
    }
    return tokens;
  };
  for (const auto& token : as_tokens(j.at("epsilons"))) {
    cfg.epsilons.push_back(EpsilonSchedule::parse(token));
  }
  for (const auto& token : as_tokens(j.at("L"))) {
    cfg.L_values.push_back(LSchedule::parse(token));
  }
  cfg.repetitions = j.at("repetitions").get<int>();
  if (cfg.repetitions < 1) throw std::runtime_error("SimConfig: repetitions must be >= 1");
  cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
  for (const auto& name : j.at("mechanisms").get<std::vector<std::string>>()) {
    if (name == "laplace") {
      cfg.mechanisms.push_back(Mechanism::laplace);
    } else if (name == "denoised_laplace") {
      cfg.mechanisms.push_back(Mechanism::denoised_laplace);
    } else if (name == "edge_flip") {
      cfg.mechanisms.push_back(Mechanism::edge_flip);
    } else {
      throw std::runtime_error("SimConfig: unknown mechanism " + name);
    }
  }
  if (cfg.mechanisms.empty()) throw std::runtime_error("SimConfig: mechanisms must be nonempty");
  return cfg;
}

std::string SimConfig::to_json() const {
  json j;
  j["n_values"] = n_values;
  std::vector<std::string> eps, ls, mechs;
  for (const auto& e : epsilons) eps.push_back(e.label());
  for (const auto& l : L_values) ls.push_back(l.label());
  for (const auto& m : mechanisms) mechs.push_back(to_string(m));
  j["epsilons"] = eps;
  j["L"] = ls;
  j["repetitions"] = repetitions;
  j["base_seed"] = base_seed;
  j["mechanisms"] = mechs;
  return j.dump(2);
}

int worker_count() {
  if (const char* env = std::getenv("LDPNET_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int repetitions, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), repetitions);
  if (workers <= 1) {
    for (int r = 0; r < repetitions; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < repetitions; r = next.fetch_add(1)) {
        try {
          fn(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

// Released 2n-vector for one repetition of one mechanism.
Eigen::VectorXi release_sequence(Mechanism mech, const DirectedGraph& g,
                                 const BiDegreeSequence& d, double epsilon, Rng& rng) {
  const PrivacyBudget budget(epsilon);
  switch (mech) {
    case Mechanism::laplace:
      return laplace_release(d, budget, rng).values;
    case Mechanism::denoised_laplace: {
      const IntegerBiSequence z = laplace_release(d, budget, rng);
      return denoise_l1(z, d.node_count()).sequence.stacked();
    }
    case Mechanism::edge_flip:
      return bi_degree_sequence(edge_flip(g, budget, rng)).stacked();
  }
  throw std::logic_error("unknown mechanism");
}

}  // namespace

std::vector<DistanceCell> run_distance_table(const SimConfig& cfg) {
  std::vector<DistanceCell> cells;
  for (int n : cfg.n_values) {
    for (std::size_t ei = 0; ei < cfg.epsilons.size(); ++ei) {
      const double epsilon = cfg.epsilons[ei].resolve(n);
      for (std::size_t li = 0; li < cfg.L_values.size(); ++li) {
        const Theta theta = linear_parameters(n, cfg.L_values[li].resolve(n));
        for (Mechanism mech : cfg.mechanisms) {
          std::vector<double> dist(cfg.repetitions);
          parallel_for(cfg.repetitions, [&](int rep) {
            Rng graph_rng(derive_seed(
                cfg.base_seed,
                {std::uint64_t(n), ei, li, std::uint64_t(rep), kGraphStream}));
            const DirectedGraph g = sample_graph(theta, graph_rng);
            const BiDegreeSequence d = bi_degree_sequence(g);
            Rng mech_rng(derive_seed(
                cfg.base_seed,
                {std::uint64_t(n), ei, li, std::uint64_t(rep), mechanism_tag(mech)}));
            const Eigen::VectorXi released = release_sequence(mech, g, d, epsilon, mech_rng);
            dist[rep] = linf_int(d.stacked(), released);
          });
          DistanceCell cell;
          cell.n = n;
          cell.epsilon_label = cfg.epsilons[ei].label();
          cell.epsilon = epsilon;
          cell.L_label = cfg.L_values[li].label();
          cell.L = cfg.L_values[li].resolve(n);
          cell.mechanism = mech;
          cell.repetitions = cfg.repetitions;
          cell.mean_linf = mean(dist);
          cell.stderr_linf = cfg.repetitions > 1
                                 ? std::sqrt(variance(dist) / cfg.repetitions)
                                 : 0.0;
          cells.push_back(cell);
        }
      }
    }
  }
  return cells;
}

void write_distance_csv(std::ostream& out, const std::vector<DistanceCell>& cells) {
  out << "n,epsilon_label,epsilon,L_label,L,mechanism,repetitions,mean_linf,stderr_linf\n";
  for (const auto& c : cells) {
    out << c.n << ',' << c.epsilon_label << ',' << fmt(c.epsilon) << ',' << c.L_label << ','
        << fmt(c.L) << ',' << to_string(c.mechanism) << ',' << c.repetitions << ','
        << fmt(c.mean_linf) << ',' << fmt(c.stderr_linf) << '\n';
  }
}

std::vector<QqRow> run_qq_study(const SimConfig& cfg) {
  constexpr StatKind kKinds[] = {StatKind::xi, StatKind::zeta, StatKind::eta};
  std::vector<QqRow> rows;
  for (int n : cfg.n_values) {
    const std::vector<std::pair<int, int>> pairs = {{1, 2}, {n / 2, n / 2 + 1}, {n - 1, n}};
    for (std::size_t ei = 0; ei < cfg.epsilons.size(); ++ei) {
      const double epsilon = cfg.epsilons[ei].resolve(n);
      for (std::size_t li = 0; li < cfg.L_values.size(); ++li) {
        const Theta theta_star = linear_parameters(n, cfg.L_values[li].resolve(n));
        // rep-major slots keep the output order independent of scheduling
        const std::size_t per_rep = cfg.mechanisms.size() * 3 * pairs.size();
        std::vector<QqRow> block(std::size_t(cfg.repetitions) * per_rep);
        parallel_for(cfg.repetitions, [&](int rep) {
          Rng graph_rng(derive_seed(
              cfg.base_seed, {std::uint64_t(n), ei, li, std::uint64_t(rep), kGraphStream}));
          const DirectedGraph g = sample_graph(theta_star, graph_rng);
          const BiDegreeSequence d = bi_degree_sequence(g);
          std::size_t slot = std::size_t(rep) * per_rep;
          for (Mechanism mech : cfg.mechanisms) {
            Rng mech_rng(derive_seed(
                cfg.base_seed,
                {std::uint64_t(n), ei, li, std::uint64_t(rep), mechanism_tag(mech)}));
            FitResult fit;
            double p_stat = 1.0;
            const PrivacyBudget budget(epsilon);
            switch (mech) {
              case Mechanism::laplace:
                fit = fit_laplace(laplace_release(d, budget, mech_rng));
                break;
              case Mechanism::denoised_laplace: {
                const IntegerBiSequence z = laplace_release(d, budget, mech_rng);
                const DenoiseResult den = denoise_l1(z, n);
                fit = solve_p0(den.sequence.stacked().cast<double>(), 1.0);
                break;
              }
              case Mechanism::edge_flip: {
                const DirectedGraph flipped = edge_flip(g, budget, mech_rng);
                fit = fit_ldp(bi_degree_sequence(flipped), epsilon);
                p_stat = budget.keep_prob();
                break;
              }
            }
            for (StatKind kind : kKinds) {
              std::vector<double> values;
              if (fit.converged) {
                values = standardized_stats(fit.theta_hat, theta_star, p_stat, pairs, kind);
              }
              for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
                QqRow row;
                row.n = n;
                row.epsilon_label = cfg.epsilons[ei].label();
                row.L_label = cfg.L_values[li].label();
                row.mechanism = mech;
                row.rep = rep;
                row.kind = kind;
                row.pair_i = pairs[pi].first;
                row.pair_j = pairs[pi].second;
                row.value = fit.converged ? values[pi]
                                          : std::numeric_limits<double>::quiet_NaN();
                row.failure = fit.failure_reason;
                block[slot++] = row;
              }
            }
          }
        });
        rows.insert(rows.end(), block.begin(), block.end());
      }
    }
  }
  return rows;
}

void write_qq_stats_csv(std::ostream& out, const std::vector<QqRow>& rows) {
  out << "rep,n,epsilon,L,mechanism,pair_i,pair_j,kind,value,failure\n";
  for (const auto& r : rows) {
    out << r.rep << ',' << r.n << ',' << r.epsilon_label << ',' << r.L_label << ','
        << to_string(r.mechanism) << ',' << r.pair_i << ',' << r.pair_j << ','
        << to_string(r.kind) << ',' << fmt(r.value) << ','
        << (r.failure == FailureReason::none ? "" : to_string(r.failure)) << '\n';
  }
}

void write_qq_quantiles_csv(std::ostream& out, const std::vector<QqRow>& rows) {
  using Key = std::tuple<int, std::string, std::string, std::string, std::string, int, int>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : rows) {
    if (std::isnan(r.value)) continue;
    groups[{r.n, r.epsilon_label, r.L_label, to_string(r.mechanism), to_string(r.kind), r.pair_i,
            r.pair_j}]
        .push_back(r.value);
  }
  out << "n,epsilon,L,mechanism,kind,pair_i,pair_j,theoretical,empirical\n";
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    const auto m = values.size();
    for (std::size_t k = 0; k < m; ++k) {
      const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(m);
      out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
          << std::get<3>(key) << ',' << std::get<4>(key) << ',' << std::get<5>(key) << ','
          << std::get<6>(key) << ',' << fmt(normal_quantile(u)) << ',' << fmt(values[k]) << '\n';
    }
  }
}

std::vector<VarianceRow> run_variance_comparison(const Theta& theta, double epsilon) {
  const auto n = theta.node_count();
  const double p = PrivacyBudget(epsilon).keep_prob();
  const Eigen::VectorXd v_tilde = v_diagonal(theta, 1.0);
  const Eigen::VectorXd v_p = v_diagonal(theta, p);
  const Eigen::VectorXd s2_p = sigma_squared(theta, p);
  const double sn2 = laplace_variance_s_n2(n, epsilon);
  const double v_tilde_last = v_tilde[2 * n - 1];
  const double flip_common = s2_p[2 * n - 1] / (v_p[2 * n - 1] * v_p[2 * n - 1]);

  std::vector<VarianceRow> rows(2 * n - 1);
  for (Eigen::Index i = 0; i < 2 * n - 1; ++i) {
    VarianceRow& row = rows[i];
    row.coordinate = static_cast<int>(i);
    row.mle = 1.0 / v_tilde[i] + 1.0 / v_tilde_last;
    row.laplace = row.mle + sn2 / (v_tilde_last * v_tilde_last);
    row.denoised_laplace = row.mle;
    row.edge_flip = s2_p[i] / (v_p[i] * v_p[i]) + flip_common;
  }
  return rows;
}

void write_variance_csv(std::ostream& out, const std::vector<VarianceRow>& rows) {
  out << "coordinate,mle,laplace,denoised_laplace,edge_flip\n";
  for (const auto& r : rows) {
    out << r.coordinate << ',' << fmt(r.mle) << ',' << fmt(r.laplace) << ','
        << fmt(r.denoised_laplace) << ',' << fmt(r.edge_flip) << '\n';
  }
}

double quantile(std::vector<int> values, double q) {
  std::sort(values.begin(), values.end());
  const auto m = values.size();
  const double h = static_cast<double>(m - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= m) return values[m - 1];
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

RealDataReport run_realdata(const std::string& edge_list_path,
                            const std::vector<double>& epsilon_values, int repetitions,
                            std::uint64_t base_seed) {
  std::ifstream probe(edge_list_path);
  if (!probe) {
    throw std::runtime_error("cannot open edge list: " + edge_list_path +
                             " (place the UC Irvine message edge list there; see README)");
  }
  const EdgeListResult loaded = load_edge_list(probe);

  RealDataReport report;
  report.raw_nodes = loaded.graph.node_count();
  report.raw_edges = loaded.graph.edge_count();
  const BiDegreeSequence raw_degrees = bi_degree_sequence(loaded.graph);
  for (Eigen::Index i = 0; i < report.raw_nodes; ++i) {
    if (raw_degrees.out[i] == 0 || raw_degrees.in[i] == 0) ++report.zero_degree_nodes;
  }

  const SubgraphResult once = filter_by_degree_once(loaded.graph, 5, 5);
  report.filtered_nodes_once = once.graph.node_count();
  report.filtered_nodes_iterated = preprocess_subgraph(loaded.graph, 5, 5).graph.node_count();

  const BiDegreeSequence d = bi_degree_sequence(once.graph);
  const std::vector<int> outs(d.out.begin(), d.out.end());
  const std::vector<int> ins(d.in.begin(), d.in.end());
  for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    report.out_degree_quantiles.push_back(quantile(outs, q));
    report.in_degree_quantiles.push_back(quantile(ins, q));
  }

  const FitResult mle = fit_mle(d);
  report.mle_converged = mle.converged;
  if (!mle.converged) {
    throw std::runtime_error(std::string("MLE failed on the filtered subgraph: ") +
                             to_string(mle.failure_reason));
  }

  constexpr Mechanism kMechs[] = {Mechanism::laplace, Mechanism::denoised_laplace,
                                  Mechanism::edge_flip};
  for (std::size_t ei = 0; ei < epsilon_values.size(); ++ei) {
    const double epsilon = epsilon_values[ei];
    for (Mechanism mech : kMechs) {
      std::vector<double> alpha_dist(repetitions, std::numeric_limits<double>::quiet_NaN());
      std::vector<double> beta_dist(repetitions, std::numeric_limits<double>::quiet_NaN());
      std::vector<double> degree_dist(repetitions);
      std::vector<char> failed(repetitions, 0);
      parallel_for(repetitions, [&](int rep) {
        Rng rng(derive_seed(base_seed, {ei, std::uint64_t(rep), mechanism_tag(mech)}));
        const PrivacyBudget budget(epsilon);
        FitResult fit;
        Eigen::VectorXi released;
        switch (mech) {
          case Mechanism::laplace: {
            const IntegerBiSequence z = laplace_release(d, budget, rng);
            released = z.values;
            fit = fit_laplace(z);
            break;
          }
          case Mechanism::denoised_laplace: {
            const IntegerBiSequence z = laplace_release(d, budget, rng);
            const DenoiseResult den = denoise_l1(z, d.node_count());
            released = den.sequence.stacked();
            fit = solve_p0(den.sequence.stacked().cast<double>(), 1.0);
            break;
          }
          case Mechanism::edge_flip: {
            const DirectedGraph flipped = edge_flip(once.graph, budget, rng);
            const BiDegreeSequence dp = bi_degree_sequence(flipped);
            released = dp.stacked();
            fit = fit_ldp(dp, epsilon);
            break;
          }
        }
        degree_dist[rep] = linf_int(d.stacked(), released);
        if (fit.converged) {
          alpha_dist[rep] =
              (fit.theta_hat.alpha - mle.theta_hat.alpha).lpNorm<Eigen::Infinity>();
          beta_dist[rep] = (fit.theta_hat.beta - mle.theta_hat.beta).lpNorm<Eigen::Infinity>();
        } else {
          failed[rep] = 1;
        }
      });

      RealDataCell cell;
      cell.epsilon = epsilon;
      cell.mechanism = mech;
      cell.repetitions = repetitions;
      std::vector<double> ok_alpha, ok_beta;
      for (int rep = 0; rep < repetitions; ++rep) {
        if (failed[rep]) {
          ++cell.failures;
        } else {
          ok_alpha.push_back(alpha_dist[rep]);
          ok_beta.push_back(beta_dist[rep]);
        }
      }
      cell.failure_frequency = double(cell.failures) / double(repetitions);
      cell.mean_degree_linf = mean(degree_dist);
      if (!ok_alpha.empty()) {
        cell.mean_alpha_linf = mean(ok_alpha);
        cell.mean_beta_linf = mean(ok_beta);
        if (ok_alpha.size() > 1) {
          cell.var_alpha_linf = variance(ok_alpha);
          cell.var_beta_linf = variance(ok_beta);
        }
      } else {
        cell.mean_alpha_linf = std::numeric_limits<double>::quiet_NaN();
        cell.mean_beta_linf = std::numeric_limits<double>::quiet_NaN();
      }
      report.cells.push_back(cell);
    }
  }
  return report;
}

void write_realdata_csv(std::ostream& out, const RealDataReport& report) {
  out << "epsilon,mechanism,repetitions,failures,failure_frequency,mean_alpha_linf,"
         "var_alpha_linf,mean_beta_linf,var_beta_linf,mean_degree_linf\n";
  for (const auto& c : report.cells) {
    out << fmt(c.epsilon) << ',' << to_string(c.mechanism) << ',' << c.repetitions << ','
        << c.failures << ',' << fmt(c.failure_frequency) << ',' << fmt(c.mean_alpha_linf) << ','
        << fmt(c.var_alpha_linf) << ',' << fmt(c.mean_beta_linf) << ',' << fmt(c.var_beta_linf)
        << ',' << fmt(c.mean_degree_linf) << '\n';
  }
}

std::string realdata_report_to_json(const RealDataReport& report) {
  json j;
  j["raw_nodes"] = report.raw_nodes;
  j["raw_edges"] = report.raw_edges;
  j["zero_degree_nodes"] = report.zero_degree_nodes;
  j["filtered_nodes_once"] = report.filtered_nodes_once;
  j["filtered_nodes_iterated"] = report.filtered_nodes_iterated;
  j["out_degree_quantiles"] = report.out_degree_quantiles;
  j["in_degree_quantiles"] = report.in_degree_quantiles;
  j["mle_converged"] = report.mle_converged;
  j["cells"] = json::array();
  for (const auto& c : report.cells) {
    j["cells"].push_back({{"epsilon", c.epsilon},
                          {"mechanism", to_string(c.mechanism)},
                          {"repetitions", c.repetitions},
                          {"failures", c.failures},
                          {"failure_frequency", c.failure_frequency},
                          {"mean_alpha_linf", c.mean_alpha_linf},
                          {"var_alpha_linf", c.var_alpha_linf},
                          {"mean_beta_linf", c.mean_beta_linf},
                          {"var_beta_linf", c.var_beta_linf},
                          {"mean_degree_linf", c.mean_degree_linf}});
  }
  return j.dump(2);
}

std::string run_manifest_json(const SimConfig& cfg) {
  const std::string config = cfg.to_json();
  std::uint64_t hash = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : config) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char hex[20];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  json j;
  j["version"] = kVersion;
  j["base_seed"] = cfg.base_seed;
  j["config"] = json::parse(config);
  j["config_hash"] = hex;
  return j.dump(2);
}

}  // namespace ldpnet
