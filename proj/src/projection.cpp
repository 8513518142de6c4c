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

#include "tukey/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linalg.hpp"
#include "normal.hpp"
#include "tukey/error.hpp"
#include "tukey/median.hpp"

namespace tukey {

using detail::Vec;

namespace {

constexpr std::size_t kBlock = 32;

bool is_atomic(const TemplateFamily& f) {
  return f.templ.kind() == DistributionKind::discrete_atoms;
}

}  // namespace

TemplateFamily TemplateFamily::make(NamedDistribution templ,
                                    std::vector<std::pair<double, double>> search_box) {
  DecayProfile decay = DecayProfile::of(templ);
  TemplateFamily f{std::move(templ), std::move(decay), std::move(search_box)};
  f.validate();
  return f;
}

void TemplateFamily::validate() const {
  if (search_box.size() != dim()) throw DimensionMismatch(dim(), search_box.size());
  for (const auto& [lo, hi] : search_box)
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw InvalidArgument("search box interval is empty or unbounded");
  // The template's own worst-direction tail must sit under `decay`.
  const DecayProfile own = DecayProfile::of(templ.recentered(Point::zeros(dim())));
  const double reach = own.inverse(1e-9);
  const double top = std::isfinite(reach) && reach > 0.0 ? reach : 1.0;
  for (int i = 0; i < 32; ++i) {
    const double t = top * static_cast<double>(i) / 31.0;
    if (own.eval(t) > decay.eval(t) + 1e-9)
      throw InvalidArgument("decay profile does not dominate the template tail");
  }
}

std::vector<std::pair<double, double>> bounding_box(const WeightedPointSet& p, double margin) {
  std::vector<std::pair<double, double>> box(
      p.dim(), {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto x = p.point(i);
    for (std::size_t j = 0; j < p.dim(); ++j) {
      box[j].first = std::min(box[j].first, x[j]);
      box[j].second = std::max(box[j].second, x[j]);
    }
  }
  for (auto& [lo, hi] : box) {
    lo -= margin;
    hi += margin;
  }
  return box;
}

FamilyObjective::FamilyObjective(const TemplateFamily& family, const WeightedPointSet& p_hat,
                                 std::size_t budget, std::uint64_t seed)
    : family_(&family), dim_(family.dim()) {
  if (p_hat.dim() != dim_) throw DimensionMismatch(dim_, p_hat.dim());
  const auto atoms = p_hat.merged();
  const std::size_t n = atoms.size();
  std::vector<Vec> dirs;
  if (dim_ == 1) {
    dirs.push_back({1.0});
  } else {
    SeededRng rng(seed);
    const std::size_t total = std::max<std::size_t>(budget, 1);
    const std::size_t anchored = n >= dim_ ? total / 4 : 0;
    std::vector<Vec> rows(dim_ - 1);
    for (std::size_t k = 0; k < anchored; ++k) {
      std::vector<std::size_t> idx;
      while (idx.size() < dim_) {
        const auto c = static_cast<std::size_t>(rng.below(n));
        if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
      }
      for (std::size_t r = 1; r < dim_; ++r)
        rows[r - 1] = detail::sub(atoms.point(idx[r]), atoms.point(idx[0]));
      if (auto v = detail::null_vector(rows, dim_)) dirs.push_back(std::move(*v));
    }
    while (dirs.size() < total) dirs.push_back(rng.unit_vector(dim_));
  }

  std::optional<WeightedPointSet> toffsets;
  if (is_atomic(family)) {
    toffsets = family.templ.offsets()->merged();
    m_ = toffsets->size();
  }
  offsets_.push_back(0);
  std::vector<std::pair<double, double>> pr(n);
  for (const auto& v : dirs) {
    dirs_.insert(dirs_.end(), v.begin(), v.end());
    for (std::size_t i = 0; i < n; ++i) pr[i] = {detail::dot(v, atoms.point(i)), atoms.weight(i)};
    std::sort(pr.begin(), pr.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += pr[i].second;
      if (i + 1 < n && pr[i + 1].first == pr[i].first) continue;
      vals_.push_back(pr[i].first);
      cum_.push_back(acc);
    }
    offsets_.push_back(vals_.size());
    if (toffsets) {
      std::vector<std::pair<double, double>> tp(m_);
      for (std::size_t i = 0; i < m_; ++i) tp[i] = {detail::dot(v, toffsets->point(i)), toffsets->weight(i)};
      std::sort(tp.begin(), tp.end());
      double t = 0.0;
      for (const auto& [x, w] : tp) {
        tvals_.push_back(x);
        tcum_.push_back(t += w);
      }
    }
  }
}

double FamilyObjective::template_cdf(double t) const {
  const auto& templ = family_->templ;
  if (templ.kind() == DistributionKind::gaussian_isotropic) return detail::normal_cdf(t / templ.scale());
  // Uniform ball: symmetric, one-sided tail from the decay profile.
  const double tail = family_->decay.eval(std::abs(t));
  return t >= 0.0 ? 1.0 - tail : tail;
}

double FamilyObjective::along_continuous(std::size_t k, double c, double best) const {
  const double* vals = vals_.data() + offsets_[k];
  const double* cum = cum_.data() + offsets_[k];
  const std::size_t len = offsets_[k + 1] - offsets_[k];
  const bool gaussian = family_->templ.kind() == DistributionKind::gaussian_isotropic;
  const double inv_sigma = 1.0 / family_->templ.scale();
  // KS distance to a continuous CDF: check both sides of every jump, skipping
  // blocks whose monotone envelope cannot beat the current best.
  for (std::size_t a = 0; a < len; a += kBlock) {
    const std::size_t b = std::min(len, a + kBlock) - 1;
    const double p_lo = a > 0 ? cum[a - 1] : 0.0;
    if (gaussian) {
      const double f_lo = detail::normal_cdf_coarse((vals[a] - c) * inv_sigma);
      const double f_hi = detail::normal_cdf_coarse((vals[b] - c) * inv_sigma);
      if (std::max(f_hi - p_lo, cum[b] - f_lo) + detail::kCoarseCdfError <= best) continue;
    } else {
      const double f_lo = template_cdf(vals[a] - c);
      const double f_hi = template_cdf(vals[b] - c);
      if (std::max(f_hi - p_lo, cum[b] - f_lo) <= best) continue;
    }
    for (std::size_t j = a; j <= b; ++j) {
      const double f = template_cdf(vals[j] - c);
      const double before = j > 0 ? cum[j - 1] : 0.0;
      best = std::max({best, std::abs(f - before), std::abs(f - cum[j])});
    }
  }
  return best;
}

double FamilyObjective::along_discrete(std::size_t k, double c) const {
  const double* vals = vals_.data() + offsets_[k];
  const double* cum = cum_.data() + offsets_[k];
  const std::size_t len = offsets_[k + 1] - offsets_[k];
  const double* tv = tvals_.data() + k * m_;
  const double* tc = tcum_.data() + k * m_;
  auto le = [&](double x) {  // p_hat(v^T X <= x)
    const auto i = static_cast<std::size_t>(std::upper_bound(vals, vals + len, x) - vals);
    return i == 0 ? 0.0 : cum[i - 1];
  };
  auto lt = [&](double x) {  // p_hat(v^T X < x)
    const auto i = static_cast<std::size_t>(std::lower_bound(vals, vals + len, x) - vals);
    return i == 0 ? 0.0 : cum[i - 1];
  };
  // Between consecutive template jumps the template CDF is flat and the
  // empirical one monotone, so the extremes sit at the interval ends.
  double best = lt(tv[0] + c);
  for (std::size_t i = 0; i < m_; ++i) {
    if (i + 1 < m_ && tv[i + 1] == tv[i]) continue;
    const double q = tc[i];
    best = std::max(best, std::abs(q - le(tv[i] + c)));
    const double next = i + 1 < m_ ? lt(tv[i + 1] + c) : cum[len - 1];
    best = std::max(best, std::abs(q - next));
  }
  return best;
}

double FamilyObjective::evaluate(std::span<const double> mu, double stop_above) const {
  if (mu.size() != dim_) throw DimensionMismatch(dim_, mu.size());
  const bool atomic = m_ > 0;
  double best = 0.0;
  const std::size_t k_total = offsets_.size() - 1;
  for (std::size_t k = 0; k < k_total; ++k) {
    const double c = detail::dot({dirs_.data() + k * dim_, dim_}, mu);
    const double v = atomic ? along_discrete(k, c) : along_continuous(k, c, best);
    best = std::max(best, v);
    if (best > stop_above) return best;
  }
  return std::min(best, 1.0);
}

double family_distance(const Point& mu, const TemplateFamily& family,
                       const WeightedPointSet& p_hat, std::size_t budget, std::uint64_t seed) {
  if (mu.dim() != family.dim()) throw DimensionMismatch(family.dim(), mu.dim());
  return FamilyObjective(family, p_hat, budget, seed).evaluate(mu.coords());
}

namespace {

Vec clamp_to(const Vec& x, const std::vector<std::pair<double, double>>& box) {
  Vec y = x;
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = std::clamp(y[j], box[j].first, box[j].second);
  return y;
}

}  // namespace

ProjectionResult project_estimate(const WeightedPointSet& p_hat, const TemplateFamily& family,
                                  const ProjectionConfig& config, SeededRng& rng) {
  family.validate();
  const std::size_t d = family.dim();
  if (p_hat.dim() != d) throw DimensionMismatch(d, p_hat.dim());
  const auto& box = family.search_box;
  const FamilyObjective objective(family, p_hat, config.budget, rng.next_u64());
  std::size_t evaluations = 0;
  auto eval = [&](const Vec& x, double stop) {
    ++evaluations;
    return objective.evaluate(x, stop);
  };

  std::vector<Vec> starts{p_hat.coordinatewise_median().vec(), p_hat.centroid().vec()};
  if (config.tukey_hint) {
    starts.push_back(config.tukey_hint->vec());
  } else if (config.tukey_start) {
    MedianOptions mopts;
    mopts.seed = rng.next_u64();
    starts.push_back(median_candidates(p_hat, mopts).point.vec());
  }
  for (const auto& s : config.extra_starts) {
    if (s.dim() != d) throw DimensionMismatch(d, s.dim());
    starts.push_back(s.vec());
  }
  for (std::size_t k = 0; k < config.random_starts; ++k) {
    Vec x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = rng.uniform(box[j].first, box[j].second);
    starts.push_back(std::move(x));
  }
  if (is_atomic(family)) {
    // Put a template atom on one of the heaviest data atoms; keep the two best.
    const auto atoms = p_hat.merged();
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return atoms.weight(a) > atoms.weight(b); });
    order.resize(std::min<std::size_t>(order.size(), 8));
    const auto toff = family.templ.offsets()->merged();
    std::vector<std::pair<double, Vec>> aligned;
    for (auto i : order)
      for (std::size_t t = 0; t < toff.size(); ++t) {
        Vec x = detail::sub(atoms.point(i), toff.point(t));
        x = clamp_to(x, box);
        aligned.emplace_back(eval(x, std::numeric_limits<double>::infinity()), std::move(x));
      }
    std::stable_sort(aligned.begin(), aligned.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < std::min<std::size_t>(2, aligned.size()); ++k)
      starts.push_back(aligned[k].second);
  }
  for (auto& s : starts) s = clamp_to(s, box);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  double diag = 0.0;
  for (const auto& [lo, hi] : bounding_box(p_hat)) diag += (hi - lo) * (hi - lo);
  const double initial_step = 0.25 * std::sqrt(diag);

  Vec best_x;
  double best_f = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    Vec x = s;
    double fx = eval(x, std::numeric_limits<double>::infinity());
    double step = initial_step;
    std::size_t level = 0;
    for (std::size_t round = 0; round < config.steps && level < 8 && step > 0.0; ++round) {
      std::vector<Vec> dirs;
      for (std::size_t j = 0; j < d; ++j) {
        dirs.push_back(Direction::axis(d, j, 1.0).vec());
        dirs.push_back(Direction::axis(d, j, -1.0).vec());
      }
      for (std::size_t j = 0; j < 2 * d; ++j) dirs.push_back(rng.unit_vector(d));
      bool moved = false;
      for (const auto& v : dirs) {
        Vec y = x;
        detail::axpy(step, v, y);
        y = clamp_to(y, box);
        if (y == x) continue;
        const double fy = eval(y, fx);
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          moved = true;
          break;
        }
      }
      if (!moved) {
        step *= 0.5;
        ++level;
      }
    }
    if (fx < best_f || (fx == best_f && x < best_x)) {
      best_f = fx;
      best_x = x;
    }
  }
  return {Point(best_x), best_f, evaluations};
}

bool certify_projection_bound(const ProjectionResult& result, const TemplateFamily& family,
                              const Point& true_center, double eps_tilde) {
  if (result.mu_hat.dim() != true_center.dim())
    throw DimensionMismatch(true_center.dim(), result.mu_hat.dim());
  if (eps_tilde >= 0.5) return true;
  const double bound = bias_bound_projection(family.decay, std::max(0.0, eps_tilde)).value;
  const auto diff = detail::sub(result.mu_hat.coords(), true_center.coords());
  return detail::norm(diff) <= bound;
}

}  // namespace tukey
