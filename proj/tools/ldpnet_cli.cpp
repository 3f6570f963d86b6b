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

// Command-line front end: sample / flip / laplace / denoise / fit / simulate /
// analyze.  Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
// failure (failure reason on standard error).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ldpnet/denoise.hpp"
#include "ldpnet/estimation.hpp"
#include "ldpnet/experiments.hpp"
#include "ldpnet/graph.hpp"
#include "ldpnet/io.hpp"
#include "ldpnet/mechanisms.hpp"
#include "ldpnet/p0.hpp"
#include "ldpnet/rng.hpp"

namespace {

using namespace ldpnet;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  return out;
}

double resolve_epsilon(const std::string& token, Eigen::Index n) {
  return EpsilonSchedule::parse(token).resolve(n);
}

// Degree CSV when the first line matches the header, edge list otherwise.
IntegerBiSequence read_sequence_any(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw std::runtime_error("cannot open: " + path);
  std::string first;
  std::getline(probe, first);
  if (first.rfind("index,kind,value", 0) == 0) {
    return read_degree_csv_file(path);
  }
  const EdgeListResult loaded = load_edge_list_file(path);
  IntegerBiSequence s;
  s.values = bi_degree_sequence(loaded.graph).stacked();
  return s;
}

int cmd_sample(Eigen::Index n, const std::string& L_token, std::uint64_t seed,
               const std::string& out_path) {
  const Theta theta = linear_parameters(n, LSchedule::parse(L_token).resolve(n));
  Rng rng(seed);
  const DirectedGraph g = sample_graph(theta, rng);
  auto out = open_output(out_path);
  write_edge_list(out, g);
  return kExitOk;
}

int cmd_flip(const std::string& in_path, const std::string& eps_token,
             const std::string& pairwise, std::uint64_t seed, const std::string& out_path) {
  const EdgeListResult loaded = load_edge_list_file(in_path);
  Rng rng(seed);
  DirectedGraph released = loaded.graph;
  if (!pairwise.empty()) {
    PairwiseFlipSpec spec{};
    char c1 = 0, c2 = 0;
    std::istringstream parse(pairwise);
    if (!(parse >> spec.gamma1 >> c1 >> spec.gamma2 >> c2 >> spec.gamma3) || c1 != ',' ||
        c2 != ',') {
      throw std::runtime_error("--pairwise expects g1,g2,g3");
    }
    if (!eps_token.empty()) {
      const double eps = resolve_epsilon(eps_token, loaded.graph.node_count());
      if (!verify_pairwise_ldp(spec, eps)) {
        std::cerr << "warning: pairwise spec does not satisfy the stated budget " << eps << "\n";
      }
    }
    released = pairwise_edge_flip(loaded.graph, spec, rng);
  } else {
    if (eps_token.empty()) throw std::runtime_error("flip requires --epsilon or --pairwise");
    const PrivacyBudget budget(resolve_epsilon(eps_token, loaded.graph.node_count()));
    released = edge_flip(loaded.graph, budget, rng);
  }
  auto out = open_output(out_path);
  write_edge_list(out, released);
  return kExitOk;
}

int cmd_laplace(const std::string& in_path, const std::string& eps_token, std::uint64_t seed,
                const std::string& out_path) {
  const EdgeListResult loaded = load_edge_list_file(in_path);
  const BiDegreeSequence d = bi_degree_sequence(loaded.graph);
  const PrivacyBudget budget(resolve_epsilon(eps_token, loaded.graph.node_count()));
  Rng rng(seed);
  const IntegerBiSequence z = laplace_release(d, budget, rng);
  auto out = open_output(out_path);
  write_degree_csv(out, z.values, d.node_count());
  return kExitOk;
}

int cmd_denoise(const std::string& in_path, Eigen::Index n, const std::string& out_path,
                const std::string& csv_path) {
  IntegerBiSequence z = read_degree_csv_file(in_path);
  if (n == 0) n = z.node_count();
  if (z.values.size() != 2 * n) throw std::runtime_error("--n disagrees with the input length");
  const DenoiseResult result = denoise_l1(z, n);
  auto out = open_output(out_path);
  out << denoise_result_to_json(result) << '\n';
  if (!csv_path.empty()) {
    auto csv = open_output(csv_path);
    write_degree_csv(csv, result.sequence.stacked(), n);
  }
  return kExitOk;
}

int cmd_fit(const std::string& in_path, const std::string& mode, const std::string& eps_token,
            const std::string& out_path) {
  const IntegerBiSequence target = read_sequence_any(in_path);
  const Eigen::Index n = target.node_count();
  FitResult fit;
  double p = 1.0;
  if (mode == "mle" || mode == "laplace") {
    fit = fit_laplace(target);
  } else if (mode == "ldp") {
    if (eps_token.empty()) throw std::runtime_error("fit --mode ldp requires --epsilon");
    const double epsilon = resolve_epsilon(eps_token, n);
    p = PrivacyBudget(epsilon).keep_prob();
    fit = solve_p0(target.values.cast<double>(), p);
  } else {
    throw std::runtime_error("--mode must be mle, laplace or ldp");
  }
  std::string text;
  if (fit.converged) {
    const Eigen::Index k = std::min<Eigen::Index>(10, 2 * n - 1);
    text = fit_with_variance_to_json(fit, variance_report(fit.theta_hat, p, k));
  } else {
    text = fit_result_to_json(fit);
  }
  auto out = open_output(out_path);
  out << text << '\n';
  if (!fit.converged) {
    std::cerr << "fit failed: " << to_string(fit.failure_reason) << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& outdir,
                 const std::string& campaign) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config: " + config_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const SimConfig cfg = SimConfig::from_json(buffer.str());
  std::filesystem::create_directories(outdir);

  {
    auto manifest = open_output(outdir + "/manifest.json");
    manifest << run_manifest_json(cfg) << '\n';
  }
  if (campaign == "distance" || campaign == "all") {
    auto out = open_output(outdir + "/distance.csv");
    write_distance_csv(out, run_distance_table(cfg));
  }
  if (campaign == "qq" || campaign == "all") {
    const std::vector<QqRow> rows = run_qq_study(cfg);
    auto stats = open_output(outdir + "/qq_stats.csv");
    write_qq_stats_csv(stats, rows);
    auto quantiles = open_output(outdir + "/qq_quantiles.csv");
    write_qq_quantiles_csv(quantiles, rows);
  }
  if (campaign == "variance" || campaign == "all") {
    auto out = open_output(outdir + "/variance.csv");
    out << "n,epsilon_label,epsilon,L_label,L,coordinate,mle,laplace,denoised_laplace,edge_flip\n";
    for (int n : cfg.n_values) {
      for (const auto& eps : cfg.epsilons) {
        for (const auto& L : cfg.L_values) {
          const Theta theta = linear_parameters(n, L.resolve(n));
          std::ostringstream cell;
          write_variance_csv(cell, run_variance_comparison(theta, eps.resolve(n)));
          std::istringstream rows(cell.str());
          std::string line;
          std::getline(rows, line);  // drop inner header
          while (std::getline(rows, line)) {
            out << n << ',' << eps.label() << ',' << eps.resolve(n) << ',' << L.label() << ','
                << L.resolve(n) << ',' << line << '\n';
          }
        }
      }
    }
  }
  return kExitOk;
}

int cmd_analyze(const std::string& edges, const std::string& eps_list, int reps,
                std::uint64_t seed, const std::string& outdir) {
  std::vector<double> eps_values;
  std::istringstream parse(eps_list);
  std::string token;
  while (std::getline(parse, token, ',')) {
    if (!token.empty()) eps_values.push_back(std::stod(token));
  }
  if (eps_values.empty()) throw std::runtime_error("--epsilons expects a comma-separated list");
  const RealDataReport report = run_realdata(edges, eps_values, reps, seed);
  std::filesystem::create_directories(outdir);
  auto csv = open_output(outdir + "/realdata.csv");
  write_realdata_csv(csv, report);
  auto js = open_output(outdir + "/realdata.json");
  js << realdata_report_to_json(report) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed-network release under edge-local differential privacy and p0-model fitting"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "Sample a p0 graph with the linear design");
  Eigen::Index sample_n = 0;
  std::string sample_L = "zero", sample_out;
  std::uint64_t sample_seed = 0;
  sample->add_option("--n", sample_n, "node count")->required();
  sample->add_option("--L", sample_L, "L value or zero/loglog_n/sqrt_log_n/log_n");
  sample->add_option("--seed", sample_seed, "random seed")->required();
  sample->add_option("--out", sample_out, "output edge list")->required();

  auto* flip = app.add_subcommand("flip", "Release a graph by (pairwise) edge-flipping");
  std::string flip_in, flip_eps, flip_pairwise, flip_out;
  std::uint64_t flip_seed = 0;
  flip->add_option("--in", flip_in, "input edge list")->required();
  flip->add_option("--epsilon", flip_eps, "privacy budget (number, logn_q or logn_h)");
  flip->add_option("--pairwise", flip_pairwise, "gamma1,gamma2,gamma3 for the dyad mechanism");
  flip->add_option("--seed", flip_seed, "random seed")->required();
  flip->add_option("--out", flip_out, "output edge list")->required();

  auto* laplace = app.add_subcommand("laplace", "Release degrees via discrete Laplace noise");
  std::string lap_in, lap_eps, lap_out;
  std::uint64_t lap_seed = 0;
  laplace->add_option("--in", lap_in, "input edge list")->required();
  laplace->add_option("--epsilon", lap_eps, "privacy budget")->required();
  laplace->add_option("--seed", lap_seed, "random seed")->required();
  laplace->add_option("--out", lap_out, "output degree CSV")->required();

  auto* denoise = app.add_subcommand("denoise", "L1-project a noisy sequence onto the graphical set");
  std::string den_in, den_out, den_csv;
  Eigen::Index den_n = 0;
  denoise->add_option("--in", den_in, "input degree CSV")->required();
  denoise->add_option("--n", den_n, "node count (default: inferred)");
  denoise->add_option("--out", den_out, "output JSON")->required();
  denoise->add_option("--csv", den_csv, "also write the denoised sequence as degree CSV");

  auto* fit = app.add_subcommand("fit", "Fit p0 parameters from a sequence or edge list");
  std::string fit_in, fit_mode = "mle", fit_eps, fit_out;
  fit->add_option("--in", fit_in, "degree CSV or edge list")->required();
  fit->add_option("--mode", fit_mode, "mle | laplace | ldp");
  fit->add_option("--epsilon", fit_eps, "budget for --mode ldp");
  fit->add_option("--out", fit_out, "output JSON")->required();

  auto* simulate = app.add_subcommand("simulate", "Run Monte Carlo campaigns from a JSON config");
  std::string sim_config, sim_outdir, sim_campaign = "all";
  simulate->add_option("--config", sim_config, "SimConfig JSON")->required();
  simulate->add_option("--outdir", sim_outdir, "output directory")->required();
  simulate->add_option("--campaign", sim_campaign, "distance | qq | variance | all");

  auto* analyze = app.add_subcommand("analyze", "Real-data release-and-refit study");
  std::string an_edges, an_eps = "2";
  int an_reps = 100;
  std::uint64_t an_seed = 0;
  std::string an_outdir;
  analyze->add_option("--edges", an_edges, "edge list file")->required();
  analyze->add_option("--epsilons", an_eps, "comma-separated budgets");
  analyze->add_option("--reps", an_reps, "repetitions per cell");
  analyze->add_option("--seed", an_seed, "base seed")->required();
  analyze->add_option("--outdir", an_outdir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sample->parsed()) return cmd_sample(sample_n, sample_L, sample_seed, sample_out);
    if (flip->parsed()) return cmd_flip(flip_in, flip_eps, flip_pairwise, flip_seed, flip_out);
    if (laplace->parsed()) return cmd_laplace(lap_in, lap_eps, lap_seed, lap_out);
    if (denoise->parsed()) return cmd_denoise(den_in, den_n, den_out, den_csv);
    if (fit->parsed()) return cmd_fit(fit_in, fit_mode, fit_eps, fit_out);
    if (simulate->parsed()) return cmd_simulate(sim_config, sim_outdir, sim_campaign);
    if (analyze->parsed()) return cmd_analyze(an_edges, an_eps, an_reps, an_seed, an_outdir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
