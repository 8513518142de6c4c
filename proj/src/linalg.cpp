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

#include "linalg.hpp"

#include <Eigen/Dense>

namespace tukey::detail {

std::optional<Vec> orthogonal_residual(const std::vector<Vec>& basis,
                                       std::span<const double> v, double rel_tol) {
  const double scale = norm(v);
  if (!(scale > 0.0)) return std::nullopt;
  Vec r(v.begin(), v.end());
  // Two passes of modified Gram-Schmidt keep the residual orthogonal.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) axpy(-dot(r, b), b, r);
  }
  if (norm(r) <= rel_tol * scale) return std::nullopt;
  normalize(r);
  return r;
}

std::optional<Vec> null_vector(const std::vector<Vec>& rows, std::size_t d) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(k, static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < k; ++i) {
    const double n = norm(rows[static_cast<std::size_t>(i)]);
    if (!(n > 0.0)) return std::nullopt;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / n;
  }
  if (k == 0) {
    Vec e(d, 0.0);
    e[0] = 1.0;
    return e;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  if (lu.rank() != k || k + 1 != static_cast<Eigen::Index>(d)) return std::nullopt;
  Eigen::VectorXd ker = lu.kernel().col(0);
  Vec out(ker.data(), ker.data() + ker.size());
  // Polish against the rows to reduce LU round-off.
  std::vector<Vec> basis;
  for (Eigen::Index i = 0; i < k; ++i) {
    auto r = orthogonal_residual(basis, rows[static_cast<std::size_t>(i)], 1e-12);
    if (r) basis.push_back(*r);
  }
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) axpy(-dot(out, b), b, out);
  if (!normalize(out)) return std::nullopt;
  return out;
}

Vec complement_axis(const std::vector<Vec>& basis, std::size_t d) {
  Vec best;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < d; ++j) {
    Vec e(d, 0.0);
    e[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) axpy(-dot(e, b), b, e);
    const double n = norm(e);
    if (n > best_norm + 1e-12) {
      best_norm = n;
      best = std::move(e);
    }
  }
  normalize(best);
  return best;
}

std::optional<Vec> negative_direction(const std::vector<Vec>& basis,
                                      const std::vector<const Vec*>& vs, std::size_t d) {
  const auto k = static_cast<Eigen::Index>(vs.size());
  if (k == 0 || basis.size() + vs.size() > d) return std::nullopt;
  Eigen::MatrixXd a(k, static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < k; ++i) {
    Vec r = *vs[static_cast<std::size_t>(i)];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) axpy(-dot(r, b), b, r);
    if (!normalize(r)) return std::nullopt;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j)
      a(i, j) = r[static_cast<std::size_t>(j)];
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(1e-10);
  if (cod.rank() != k) return std::nullopt;
  // Minimum-norm solution lies in the row space, hence orthogonal to basis.
  const Eigen::VectorXd v = cod.solve(Eigen::VectorXd::Constant(k, -1.0));
  Vec out(v.data(), v.data() + v.size());
  if (!normalize(out)) return std::nullopt;
  for (const auto* y : vs)
    if (!(dot(out, *y) < 0.0)) return std::nullopt;
  return out;
}

}  // namespace tukey::detail
