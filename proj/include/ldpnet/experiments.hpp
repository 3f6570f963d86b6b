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

#ifndef LDPNET_EXPERIMENTS_HPP_
#define LDPNET_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldpnet/estimation.hpp"
#include "ldpnet/graph.hpp"
#include "ldpnet/p0.hpp"

namespace ldpnet {

enum class Mechanism { laplace, denoised_laplace, edge_flip };
const char* to_string(Mechanism m);

// Privacy budget schedule: a literal value or one of the decaying-in-n grids.
struct EpsilonSchedule {
  enum class Kind { fixed, logn_over_n_quarter, logn_over_n_half };
  Kind kind = Kind::fixed;
  double value = 0.0;

  double resolve(Eigen::Index n) const;
  std::string label() const;

  static EpsilonSchedule fixed(double v) { return {Kind::fixed, v}; }
  static EpsilonSchedule parse(const std::string& token);
};

// Parameter-magnitude schedule for the linear design.
struct LSchedule {
  enum class Kind { zero, loglog_n, sqrt_log_n, log_n, fixed };
  Kind kind = Kind::zero;
  double value = 0.0;

  double resolve(Eigen::Index n) const;
  std::string label() const;

  static LSchedule fixed(double v) { return {Kind::fixed, v}; }
  static LSchedule parse(const std::string& token);
};

struct SimConfig {
  std::vector<int> n_values;
  std::vector<EpsilonSchedule> epsilons;
  std::vector<LSchedule> L_values;
  int repetitions = 1;
  std::uint64_t base_seed = 0;
  std::vector<Mechanism> mechanisms;

  static SimConfig from_json(const std::string& text);
  std::string to_json() const;
};

// Number of parallel workers: LDPNET_THREADS when set, otherwise the hardware
// concurrency.  Results never depend on it.
int worker_count();

// Runs fn(rep) for rep in [0, repetitions) on worker_count() threads.
void parallel_for(int repetitions, const std::function<void(int)>& fn);

struct DistanceCell {
  int n = 0;
  std::string epsilon_label;
  double epsilon = 0.0;
  std::string L_label;
  double L = 0.0;
  Mechanism mechanism = Mechanism::laplace;
  int repetitions = 0;
  double mean_linf = 0.0;
  double stderr_linf = 0.0;
};

// Table of mean L-inf distances between original and released bi-degree
// sequences, one cell per (n, epsilon, L, mechanism).
std::vector<DistanceCell> run_distance_table(const SimConfig& cfg);
void write_distance_csv(std::ostream& out, const std::vector<DistanceCell>& cells);

struct QqRow {
  int n = 0;
  std::string epsilon_label;
  std::string L_label;
  Mechanism mechanism = Mechanism::laplace;
  int rep = 0;
  StatKind kind = StatKind::xi;
  int pair_i = 0;  // 1-based node indices
  int pair_j = 0;
  double value = 0.0;  // NaN when the fit failed
  FailureReason failure = FailureReason::none;
};

// Standardized statistics xi/zeta/eta for the pairs (1,2), (n/2, n/2+1),
// (n-1, n), one fit per (cell, repetition, mechanism).  Failed repetitions
// are recorded, never dropped.
std::vector<QqRow> run_qq_study(const SimConfig& cfg);
void write_qq_stats_csv(std::ostream& out, const std::vector<QqRow>& rows);

// Theoretical-vs-empirical normal quantile pairs of the successful values,
// grouped by (cell, mechanism, kind, pair); ready for plotting.
void write_qq_quantiles_csv(std::ostream& out, const std::vector<QqRow>& rows);

struct VarianceRow {
  int coordinate = 0;  // 0-based position among the 2n-1 free parameters
  double mle = 0.0;
  double laplace = 0.0;
  double denoised_laplace = 0.0;
  double edge_flip = 0.0;
};

// Per-coordinate asymptotic variances of the four estimators at theta.
std::vector<VarianceRow> run_variance_comparison(const Theta& theta, double epsilon);
void write_variance_csv(std::ostream& out, const std::vector<VarianceRow>& rows);

struct RealDataCell {
  double epsilon = 0.0;
  Mechanism mechanism = Mechanism::laplace;
  int repetitions = 0;
  int failures = 0;
  double failure_frequency = 0.0;
  double mean_alpha_linf = 0.0;  // over successful repetitions
  double var_alpha_linf = 0.0;
  double mean_beta_linf = 0.0;
  double var_beta_linf = 0.0;
  double mean_degree_linf = 0.0;  // ||d - released||_inf, all repetitions
};

struct RealDataReport {
  Eigen::Index raw_nodes = 0;
  Eigen::Index raw_edges = 0;
  Eigen::Index zero_degree_nodes = 0;       // out-degree or in-degree zero
  Eigen::Index filtered_nodes_once = 0;     // single filtering pass (reported size)
  Eigen::Index filtered_nodes_iterated = 0; // fixed point of the same filter
  std::vector<double> out_degree_quantiles; // 0, 1/4, 1/2, 3/4, 1
  std::vector<double> in_degree_quantiles;
  bool mle_converged = false;
  std::vector<RealDataCell> cells;
};

// Table-3-style pipeline: ingest, filter to out/in degrees > 5 (single pass,
// the fixed-point count is reported alongside), fit the MLE once, then per
// (epsilon, mechanism, repetition) release + refit and record distances to
// the MLE and failure frequencies.
RealDataReport run_realdata(const std::string& edge_list_path,
                            const std::vector<double>& epsilon_values, int repetitions,
                            std::uint64_t base_seed);
void write_realdata_csv(std::ostream& out, const RealDataReport& report);
std::string realdata_report_to_json(const RealDataReport& report);

// Type-7 (linear interpolation) quantile of an integer sample.
double quantile(std::vector<int> values, double q);

// Run manifest: config echo, seed, version, and a config hash, for
// reproducibility audits.
std::string run_manifest_json(const SimConfig& cfg);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ldpnet

#endif  // LDPNET_EXPERIMENTS_HPP_
