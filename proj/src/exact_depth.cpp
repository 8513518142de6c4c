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

#include "exact_depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tukey::detail {

namespace {

constexpr double kBoundaryTol = 1e-9;
constexpr double kRankTol = 1e-9;

}  // namespace

ExactDepthSolver::ExactDepthSolver(const WeightedPointSet& p, std::span<const double> mu)
    : dim_(p.dim()), p_(&p), group_of_(p.size(), -1) {
  std::map<Vec, std::size_t> index;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Vec y = sub(p.point(i), mu);
    if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; })) {
      zero_mass_ += p.weight(i);
      continue;
    }
    auto [it, inserted] = index.emplace(y, offsets_.size());
    if (inserted) {
      offset_norm_.push_back(norm(y));
      offsets_.push_back(std::move(y));
      atoms_.emplace_back();
      group_mass_.push_back(0.0);
    }
    group_mass_[it->second] += p.weight(i);
    atoms_[it->second].push_back(i);
    group_of_[i] = static_cast<std::ptrdiff_t>(it->second);
  }
  for (const auto& y : offsets_) flat_.insert(flat_.end(), y.begin(), y.end());
}

double ExactDepthSolver::mass(const std::vector<char>& mask) const {
  double m = 0.0;
  for (std::size_t i = 0; i < group_of_.size(); ++i) {
    const auto g = group_of_[i];
    if (g < 0 || mask[static_cast<std::size_t>(g)]) m += p_->weight(i);
  }
  return m;
}

double ExactDepthSolver::local_mass(const std::vector<std::size_t>& members) const {
  // Always summed in ascending atom order so equal sets give equal sums.
  if (members.size() * 16 < group_of_.size()) {
    std::vector<std::size_t> idx;
    for (auto g : members) idx.insert(idx.end(), atoms_[g].begin(), atoms_[g].end());
    std::sort(idx.begin(), idx.end());
    double m = 0.0;
    for (auto i : idx) m += p_->weight(i);
    return m;
  }
  std::vector<char> mask(offsets_.size(), 0);
  for (auto g : members) mask[g] = 1;
  double m = 0.0;
  for (std::size_t i = 0; i < group_of_.size(); ++i) {
    const auto g = group_of_[i];
    if (g >= 0 && mask[static_cast<std::size_t>(g)]) m += p_->weight(i);
  }
  return m;
}

ExactDepthSolver::Local ExactDepthSolver::evaluate_normal(const std::vector<std::size_t>& s,
                                                          const std::vector<Vec>& basis,
                                                          const Vec& normal,
                                                          std::size_t boundary_cap) const {
  std::vector<std::size_t> pos, neg, bnd;
  std::vector<double> proj(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto g = s[k];
    proj[k] = dot(normal, offsets_[g]);
    if (std::abs(proj[k]) <= kBoundaryTol * offset_norm_[g]) {
      bnd.push_back(g);
    } else if (proj[k] > 0.0) {
      pos.push_back(g);
    } else {
      neg.push_back(g);
    }
  }
  Local inner;
  bool resolved = false;
  if (!bnd.empty() && bnd.size() <= boundary_cap) {
    auto nb = basis;
    nb.push_back(normal);
    inner = solve(bnd, nb);
    resolved = true;
  } else {
    inner.members = bnd;
  }
  auto with_inner = [&](std::vector<std::size_t> side) {
    side.insert(side.end(), inner.members.begin(), inner.members.end());
    return side;
  };
  auto plus = with_inner(pos);
  auto minus = with_inner(neg);
  const double vp = local_mass(plus);
  const double vm = local_mass(minus);
  const double sign = vp <= vm ? 1.0 : -1.0;

  Local out;
  out.members = sign > 0 ? std::move(plus) : std::move(minus);
  out.value = sign > 0 ? vp : vm;
  out.dir = normal;
  for (auto& x : out.dir) x *= sign;
  if (resolved) {
    // Tilt towards the inner direction without crossing any off-plane atom.
    double delta = 0.5;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto g = s[k];
      if (std::abs(proj[k]) <= kBoundaryTol * offset_norm_[g]) continue;
      const double lean = std::abs(dot(inner.dir, offsets_[g]));
      if (lean > 0.0) delta = std::min(delta, 0.5 * std::abs(proj[k]) / lean);
    }
    axpy(delta, inner.dir, out.dir);
    normalize(out.dir);
  }
  return out;
}

ExactDepthSolver::Local ExactDepthSolver::solve(const std::vector<std::size_t>& s,
                                                const std::vector<Vec>& basis,
                                                double stop_below) const {
  const std::size_t m = dim_ - basis.size();
  if (s.empty()) return {{}, complement_axis(basis, dim_), 0.0};
  if (s.size() <= m) {
    // Independent offsets can all be put strictly on the open side.
    std::vector<const Vec*> vs;
    for (auto g : s) vs.push_back(&offsets_[g]);
    if (auto v = negative_direction(basis, vs, dim_)) return {{}, std::move(*v), 0.0};
  }
  if (m == 1) {
    const Vec u = complement_axis(basis, dim_);
    std::vector<std::size_t> pos, neg;
    for (auto g : s) (dot(u, offsets_[g]) > 0.0 ? pos : neg).push_back(g);
    const double vp = local_mass(pos), vn = local_mass(neg);
    if (vp <= vn) return {std::move(pos), u, vp};
    Vec v = u;
    for (auto& x : v) x = -x;
    return {std::move(neg), std::move(v), vn};
  }
  // Offsets not spanning the subspace: the orthogonal part of a direction is
  // irrelevant, so restrict to the span.
  std::vector<Vec> span = basis;
  for (auto g : s) {
    if (span.size() == dim_) break;
    if (auto r = orthogonal_residual(span, offsets_[g], kRankTol)) span.push_back(std::move(*r));
  }
  if (span.size() < dim_) {
    auto nb = basis;
    nb.push_back(complement_axis(span, dim_));
    return solve(s, nb);
  }
  // Every cell of the arrangement has a vertex ray orthogonal to m-1 offsets.
  Local best;
  best.value = std::numeric_limits<double>::infinity();
  const std::size_t k = m - 1;
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < k; ++j) idx[j] = j;
  if (s.size() >= k) {
    std::vector<Vec> rows = basis;
    rows.resize(basis.size() + k);
    for (;;) {
      for (std::size_t j = 0; j < k; ++j) rows[basis.size() + j] = offsets_[s[idx[j]]];
      if (auto nrm = null_vector(rows, dim_)) {
        // Off-plane mass on the lighter side bounds the candidate from below.
        double pos = 0.0, neg = 0.0;
        for (auto g : s) {
          const double c = dot(*nrm, offsets_[g]);
          if (std::abs(c) > kBoundaryTol * offset_norm_[g]) (c > 0.0 ? pos : neg) += group_mass_[g];
        }
        if (std::min(pos, neg) <= best.value + 1e-9) {
          auto cand = evaluate_normal(s, basis, *nrm, std::numeric_limits<std::size_t>::max());
          if (cand.value < best.value) best = std::move(cand);
          if (zero_mass_ + best.value < stop_below) break;
        }
      }
      std::size_t j = k;
      while (j > 0 && idx[j - 1] == s.size() - k + (j - 1)) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  if (best.dir.empty()) {
    best.members = s;
    best.dir = complement_axis(basis, dim_);
    best.value = local_mass(s);
  }
  return best;
}

ExactDepthSolver::Candidate ExactDepthSolver::solve_all(double stop_below) const {
  std::vector<std::size_t> all(offsets_.size());
  for (std::size_t g = 0; g < all.size(); ++g) all[g] = g;
  auto local = solve(all, {}, stop_below);
  Candidate c{std::vector<char>(offsets_.size(), 0), std::move(local.dir)};
  for (auto g : local.members) c.mask[g] = 1;
  return c;
}

std::optional<ExactDepthSolver::Candidate> ExactDepthSolver::evaluate_subset(
    const std::vector<std::size_t>& idx, std::size_t boundary_cap, double accept_below) const {
  std::vector<Vec> rows;
  rows.reserve(idx.size());
  for (auto g : idx) rows.push_back(offsets_[g]);
  auto nrm = null_vector(rows, dim_);
  if (!nrm) return std::nullopt;
  // Quick pass: side masses in group order and the on-plane groups.
  double pos = 0.0, neg = 0.0;
  std::vector<std::size_t> bnd;
  const double* v = nrm->data();
  for (std::size_t g = 0; g < offsets_.size(); ++g) {
    const double* y = flat_.data() + g * dim_;
    double c = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) c += v[j] * y[j];
    if (std::abs(c) <= kBoundaryTol * offset_norm_[g]) {
      bnd.push_back(g);
    } else {
      (c > 0.0 ? pos : neg) += group_mass_[g];
    }
  }
  double inner = 0.0;
  if (bnd.size() <= boundary_cap) {
    inner = solve(bnd, {*nrm}).value;
  } else {
    for (auto g : bnd) inner += group_mass_[g];
  }
  if (zero_mass_ + std::min(pos, neg) + inner >= accept_below + 1e-12) return std::nullopt;
  std::vector<std::size_t> all(offsets_.size());
  for (std::size_t g = 0; g < all.size(); ++g) all[g] = g;
  auto local = evaluate_normal(all, {}, *nrm, boundary_cap);
  Candidate c{std::vector<char>(offsets_.size(), 0), std::move(local.dir)};
  for (auto g : local.members) c.mask[g] = 1;
  return c;
}

}  // namespace tukey::detail
