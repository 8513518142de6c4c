//
// Copyright 2026 The tukeydepth Authors
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
//

#include "normal.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace tukey::detail {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

namespace {

constexpr double kTableEdge = 8.5;
constexpr int kTableSteps = 1024;  // per unit

const std::vector<double>& cdf_table() {
  static const std::vector<double> table = [] {
    const int size = static_cast<int>(2 * kTableEdge * kTableSteps) + 2;
    std::vector<double> t(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i)
      t[static_cast<std::size_t>(i)] = normal_cdf(-kTableEdge + static_cast<double>(i) / kTableSteps);
    return t;
  }();
  return table;
}

}  // namespace

double normal_cdf_coarse(double x) {
  if (x <= -kTableEdge) return 0.0;
  if (x >= kTableEdge) return 1.0;
  const auto& t = cdf_table();
  const double u = (x + kTableEdge) * kTableSteps;
  const auto i = static_cast<std::size_t>(u);
  const double f = u - static_cast<double>(i);
  return t[i] + f * (t[i + 1] - t[i]);
}

double normal_quantile(double u) {
  if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
  if (!(u < 1.0)) return std::numeric_limits<double>::infinity();
  // Bracket is wide enough for any u representable away from 0 and 1.
  double lo = -40.0, hi = 40.0;
  const bool upper = u > 0.5;
  const double target = upper ? 1.0 - u : u;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    // Compare in the tail that keeps precision.
    const bool below = upper ? normal_sf(mid) > target : normal_cdf(mid) < target;
    (below ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tukey::detail
