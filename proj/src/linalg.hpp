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

// Small dense-vector helpers shared by the geometry code. Internal header.

#ifndef TUKEY_SRC_LINALG_HPP_
#define TUKEY_SRC_LINALG_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tukey::detail {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vec sub(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline void axpy(double alpha, std::span<const double> x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline bool normalize(Vec& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) return false;
  for (auto& x : v) x /= n;
  return true;
}

// Residual of `v` after removing its components along the orthonormal rows of
// `basis`; returns nullopt when the residual is below rel_tol * |v|.
std::optional<Vec> orthogonal_residual(const std::vector<Vec>& basis,
                                       std::span<const double> v, double rel_tol);

// Unit vector orthogonal to all of `rows` (each length d, rows.size() == d-1),
// or nullopt when the rows are rank deficient.
std::optional<Vec> null_vector(const std::vector<Vec>& rows, std::size_t d);

// Unit vector orthogonal to everything in `basis` (orthonormal), chosen from
// the canonical axes by Gram-Schmidt. Requires basis.size() < d.
Vec complement_axis(const std::vector<Vec>& basis, std::size_t d);

// Unit vector orthogonal to `basis` (orthonormal) with a strictly negative
// inner product with every vector in `vs`, or nullopt when the components of
// `vs` orthogonal to `basis` are linearly dependent.
std::optional<Vec> negative_direction(const std::vector<Vec>& basis,
                                      const std::vector<const Vec*>& vs, std::size_t d);

}  // namespace tukey::detail

#endif  // TUKEY_SRC_LINALG_HPP_
