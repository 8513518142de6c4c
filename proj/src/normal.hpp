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

// Standard normal distribution helpers. Internal header.

#ifndef TUKEY_SRC_NORMAL_HPP_
#define TUKEY_SRC_NORMAL_HPP_

namespace tukey::detail {

// P(Z <= x).
double normal_cdf(double x);
// P(Z > x), accurate in the upper tail.
double normal_sf(double x);
// Table-interpolated P(Z <= x); absolute error below 1e-7. For bounds only.
double normal_cdf_coarse(double x);
inline constexpr double kCoarseCdfError = 1e-7;
// x with P(Z <= x) = u, by bisection to 1e-10; u in (0, 1).
double normal_quantile(double u);

}  // namespace tukey::detail

#endif  // TUKEY_SRC_NORMAL_HPP_
