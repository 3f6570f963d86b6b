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

#ifndef LDPNET_STATS_HPP_
#define LDPNET_STATS_HPP_

#include <vector>

namespace ldpnet {

double normal_cdf(double x);

// Inverse standard normal CDF (Acklam's rational approximation, refined with
// one Halley step; absolute error < 1e-9 on (0, 1)).
double normal_quantile(double u);

// Kolmogorov-Smirnov statistic of a sample against the standard normal.
double ks_statistic_normal(std::vector<double> sample);

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // denominator n - 1
double median(std::vector<double> xs);

}  // namespace ldpnet

#endif  // LDPNET_STATS_HPP_
