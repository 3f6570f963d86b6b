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

#ifndef LDPNET_IO_HPP_
#define LDPNET_IO_HPP_

#include <iosfwd>
#include <string>

#include "ldpnet/denoise.hpp"
#include "ldpnet/estimation.hpp"
#include "ldpnet/graph.hpp"
#include "ldpnet/p0.hpp"

namespace ldpnet {

// Degree CSV: header "index,kind,value", kind in {out, in}, index 0-based
// within its block.  The reader requires integer values (observed or
// released sequences); debiased real-valued intermediates are never read back.
void write_degree_csv(std::ostream& out, const Eigen::VectorXi& values, Eigen::Index n);
IntegerBiSequence read_degree_csv(std::istream& in);
IntegerBiSequence read_degree_csv_file(const std::string& path);

std::string theta_to_json(const Theta& theta);
Theta theta_from_json(const std::string& text);

std::string fit_result_to_json(const FitResult& fit);
std::string fit_with_variance_to_json(const FitResult& fit, const VarianceReport& report);
std::string denoise_result_to_json(const DenoiseResult& result);

}  // namespace ldpnet

#endif  // LDPNET_IO_HPP_
