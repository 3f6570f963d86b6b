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

#include "ldpnet/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ldpnet {

namespace {

using nlohmann::json;

json theta_json(const Theta& theta) {
  return json{{"alpha", std::vector<double>(theta.alpha.begin(), theta.alpha.end())},
              {"beta", std::vector<double>(theta.beta.begin(), theta.beta.end())}};
}

}  // namespace

void write_degree_csv(std::ostream& out, const Eigen::VectorXi& values, Eigen::Index n) {
  if (values.size() != 2 * n) throw std::invalid_argument("write_degree_csv: length must be 2n");
  out << "index,kind,value\n";
  for (Eigen::Index i = 0; i < n; ++i) out << i << ",out," << values[i] << '\n';
  for (Eigen::Index i = 0; i < n; ++i) out << i << ",in," << values[n + i] << '\n';
}

IntegerBiSequence read_degree_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,kind,value", 0) != 0) {
    throw std::runtime_error("degree CSV: missing 'index,kind,value' header");
  }
  std::map<long, int> out_block, in_block;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string index_str, kind, value_str;
    if (!std::getline(row, index_str, ',') || !std::getline(row, kind, ',') ||
        !std::getline(row, value_str)) {
      throw std::runtime_error("degree CSV: malformed row at line " + std::to_string(line_no));
    }
    long index;
    int value;
    std::size_t pos_i = 0, pos_v = 0;
    try {
      index = std::stol(index_str, &pos_i);
      value = std::stoi(value_str, &pos_v);
    } catch (const std::exception&) {
      pos_i = pos_v = 0;
    }
    if (pos_i != index_str.size() || pos_v != value_str.size()) {
      throw std::runtime_error("degree CSV: non-integer field at line " + std::to_string(line_no));
    }
    if (kind == "out") {
      out_block[index] = value;
    } else if (kind == "in") {
      in_block[index] = value;
    } else {
      throw std::runtime_error("degree CSV: kind must be 'out' or 'in' at line " +
                               std::to_string(line_no));
    }
  }
  const auto n = static_cast<Eigen::Index>(out_block.size());
  if (n < 2 || in_block.size() != out_block.size()) {
    throw std::runtime_error("degree CSV: out and in blocks must both cover n >= 2 indices");
  }
  IntegerBiSequence s;
  s.values.resize(2 * n);
  Eigen::Index pos = 0;
  for (const auto& [idx, value] : out_block) s.values[pos++] = value;
  for (const auto& [idx, value] : in_block) s.values[pos++] = value;
  return s;
}

IntegerBiSequence read_degree_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open degree CSV: " + path);
  return read_degree_csv(in);
}

std::string theta_to_json(const Theta& theta) { return theta_json(theta).dump(2); }

Theta theta_from_json(const std::string& text) {
  const json j = json::parse(text);
  Theta theta;
  const auto alpha = j.at("alpha").get<std::vector<double>>();
  const auto beta = j.at("beta").get<std::vector<double>>();
  theta.alpha = Eigen::Map<const Eigen::VectorXd>(alpha.data(), alpha.size());
  theta.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), beta.size());
  validate_theta(theta);
  return theta;
}

std::string fit_result_to_json(const FitResult& fit) {
  json j{{"converged", fit.converged},
         {"iterations", fit.iterations},
         {"residual_inf", fit.residual_inf},
         {"failure_reason", to_string(fit.failure_reason)}};
  if (fit.converged) j["theta"] = theta_json(fit.theta_hat);
  return j.dump(2);
}

std::string fit_with_variance_to_json(const FitResult& fit, const VarianceReport& report) {
  json j = json::parse(fit_result_to_json(fit));
  j["variance"] = {
      {"evaluated_at", "theta_hat"},  // plug-in estimates, not the truth
      {"v_diag", std::vector<double>(report.v_diag.begin(), report.v_diag.end())},
      {"v_2n_2n", report.v_2n_2n},
      {"sigma2", std::vector<double>(report.sigma2.begin(), report.sigma2.end())},
      {"per_coordinate_variance",
       std::vector<double>(report.per_coordinate_variance.begin(),
                           report.per_coordinate_variance.end())},
  };
  return j.dump(2);
}

std::string denoise_result_to_json(const DenoiseResult& result) {
  const json j{{"out", std::vector<int>(result.sequence.out.begin(), result.sequence.out.end())},
               {"in", std::vector<int>(result.sequence.in.begin(), result.sequence.in.end())},
               {"l1_cost", result.l1_cost},
               {"exact", result.exact}};
  return j.dump(2);
}

}  // namespace ldpnet
