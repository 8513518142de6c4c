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

#include "tukey/depth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "exact_depth.hpp"
#include "linalg.hpp"
#include "tukey/error.hpp"

namespace tukey {

using detail::Vec;

std::string_view to_string(DepthEngine engine) {
  switch (engine) {
    case DepthEngine::exact1d: return "exact1d";
    case DepthEngine::sweep2d: return "sweep2d";
    case DepthEngine::sampled: return "sampled";
    case DepthEngine::oracle: return "oracle";
    case DepthEngine::automatic: return "auto";
  }
  return "unknown";
}

DepthEngine parse_depth_engine(std::string_view name) {
  if (name == "exact1d") return DepthEngine::exact1d;
  if (name == "sweep2d") return DepthEngine::sweep2d;
  if (name == "sampled") return DepthEngine::sampled;
  if (name == "oracle") return DepthEngine::oracle;
  if (name == "auto" || name == "automatic") return DepthEngine::automatic;
  throw ConfigError("unknown depth engine '" + std::string(name) + "'");
}

namespace {

void check_dim(const WeightedPointSet& p, const Point& mu) {
  if (p.dim() != mu.dim()) throw DimensionMismatch(p.dim(), mu.dim());
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

DepthResult depth_1d(const WeightedPointSet& p, const Point& mu) {
  if (p.dim() != 1) throw InvalidArgument("depth_1d requires d = 1");
  check_dim(p, mu);
  double up = 0.0, down = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.point(i)[0];
    if (x >= mu[0]) up += p.weight(i);
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.point(i)[0];
    if (x <= mu[0]) down += p.weight(i);
  }
  if (up <= down) return {up, Direction::axis(1, 0, 1.0), DepthEngine::exact1d};
  return {down, Direction::axis(1, 0, -1.0), DepthEngine::exact1d};
}

DepthResult depth_2d_sweep(const WeightedPointSet& p, const Point& mu) {
  if (p.dim() != 2) throw InvalidArgument("depth_2d_sweep requires d = 2");
  check_dim(p, mu);
  const std::size_t n = p.size();
  std::vector<Vec> y(n);
  std::vector<char> zero(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = detail::sub(p.point(i), mu.coords());
    zero[i] = (y[i][0] == 0.0 && y[i][1] == 0.0);
  }

  // Events: a direction v enters atom i's open halfplane {v^T y_i > 0} when it
  // rotates counterclockwise past rot(-90) y_i and leaves it past rot(+90) y_i.
  struct Event {
    double angle;
    double dx, dy;
    std::size_t atom;
    bool enter;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < n; ++i) {
    if (zero[i]) continue;
    const double ex = y[i][1], ey = -y[i][0];
    events.push_back({std::atan2(ey, ex), ex, ey, i, true});
    events.push_back({std::atan2(-ey, -ex), -ex, -ey, i, false});
  }
  auto zero_mask_mass = [&](const std::vector<char>& mask) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i] || zero[i]) m += p.weight(i);
    return m;
  };
  if (events.empty()) {
    return {zero_mask_mass(std::vector<char>(n, 0)), Direction::axis(2, 0), DepthEngine::sweep2d};
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    if (a.atom != b.atom) return a.atom < b.atom;
    return a.enter && !b.enter;
  });
  auto same_dir = [](const Event& a, const Event& b) {
    const double cross = a.dx * b.dy - a.dy * b.dx;
    const double dot = a.dx * b.dx + a.dy * b.dy;
    const double scale = std::hypot(a.dx, a.dy) * std::hypot(b.dx, b.dy);
    return dot > 0.0 && std::abs(cross) <= 1e-12 * scale;
  };
  // Group equal directions; merge the wrap-around group.
  std::vector<std::size_t> group_of(events.size());
  std::size_t groups = 0;
  for (std::size_t k = 0; k < events.size(); ++k) {
    if (k > 0 && same_dir(events[k - 1], events[k])) {
      group_of[k] = group_of[k - 1];
    } else {
      group_of[k] = groups++;
    }
  }
  if (groups > 1 && same_dir(events.back(), events.front())) {
    const std::size_t last = group_of.back();
    for (auto& g : group_of)
      if (g == last) g = 0;
    --groups;
  }
  std::vector<double> enter_mass(groups, 0.0), leave_mass(groups, 0.0);
  std::vector<std::size_t> enter_group(n, 0), leave_group(n, 0);
  std::vector<double> gx(groups), gy(groups), gangle(groups);
  std::vector<char> seen(groups, 0);
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto g = group_of[k];
    const auto& e = events[k];
    if (!seen[g]) {
      seen[g] = 1;
      const double h = std::hypot(e.dx, e.dy);
      gx[g] = e.dx / h;
      gy[g] = e.dy / h;
      gangle[g] = std::atan2(gy[g], gx[g]);
    }
    if (e.enter) {
      enter_mass[g] += p.weight(e.atom);
      enter_group[e.atom] = g;
    } else {
      leave_mass[g] += p.weight(e.atom);
      leave_group[e.atom] = g;
    }
  }
  // Groups in angular order: group ids are already increasing in angle except
  // for the merged wrap-around group 0, which stays first.
  auto is_open_at = [&](std::size_t atom, std::size_t g) {
    // Strictly after the enter group and strictly before the leave group,
    // counting counterclockwise from the enter group.
    const std::size_t a = enter_group[atom], b = leave_group[atom];
    const std::size_t dist_b = (b + groups - a) % groups;
    const std::size_t dist_g = (g + groups - a) % groups;
    return dist_g > 0 && dist_g < dist_b;
  };
  double open = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (!zero[i] && is_open_at(i, 0)) open += p.weight(i);
  std::vector<double> value(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    if (g > 0) open += enter_mass[g - 1] - leave_mass[g];
    value[g] = open + std::min(enter_mass[g], leave_mass[g]);
  }
  const double approx_min = *std::min_element(value.begin(), value.end());

  // Recount the near-minimal groups exactly in atom order.
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_g = 0;
  bool best_ccw = true;
  for (std::size_t g = 0; g < groups; ++g) {
    if (value[g] > approx_min + 1e-9) continue;
    for (int side = 0; side < 2; ++side) {
      const bool ccw = side == 0;
      std::vector<char> mask(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (zero[i]) continue;
        mask[i] = is_open_at(i, g) || (ccw ? enter_group[i] == g : leave_group[i] == g);
      }
      const double m = zero_mask_mass(mask);
      if (m < best) {
        best = m;
        best_g = g;
        best_ccw = ccw;
      }
    }
  }
  // Witness: rotate the group direction halfway towards its neighbour.
  const double two_pi = 2.0 * M_PI;
  double gap = 0.1;
  if (groups > 1) {
    const std::size_t nb = best_ccw ? (best_g + 1) % groups : (best_g + groups - 1) % groups;
    double delta = best_ccw ? gangle[nb] - gangle[best_g] : gangle[best_g] - gangle[nb];
    delta = std::fmod(delta + 2.0 * two_pi, two_pi);
    if (delta > 0.0) gap = std::min(gap, 0.5 * delta);
  }
  const double ang = gangle[best_g] + (best_ccw ? gap : -gap);
  const std::vector<double> w{std::cos(ang), std::sin(ang)};
  return {best, Direction::normalized(w), DepthEngine::sweep2d};
}

namespace {

DepthResult oracle_impl(const WeightedPointSet& p, const Point& mu, double stop_below) {
  check_dim(p, mu);
  detail::ExactDepthSolver solver(p, mu.coords());
  const double combos = binomial(solver.groups(), p.dim() - 1);
  if (combos > kOracleGuard)
    throw GuardExceeded("oracle enumeration C(" + std::to_string(solver.groups()) + ", " +
                        std::to_string(p.dim() - 1) +
                        ") exceeds 1e6 candidate normals; use the sampled engine");
  auto best = solver.solve_all(stop_below);
  return {solver.mass(best.mask), Direction::normalized(best.dir), DepthEngine::oracle};
}

}  // namespace

DepthResult depth_oracle(const WeightedPointSet& p, const Point& mu) {
  return oracle_impl(p, mu, -std::numeric_limits<double>::infinity());
}

DepthResult depth_sampled(const WeightedPointSet& p, const Point& mu, std::size_t budget,
                          SeededRng& rng) {
  check_dim(p, mu);
  if (budget == 0) throw InvalidArgument("depth_sampled budget must be >= 1");
  const std::size_t d = p.dim();
  const std::size_t n = p.size();
  std::vector<double> y(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) y[i * d + j] = p.point(i)[j] - mu[j];

  double best = std::numeric_limits<double>::infinity();
  Vec best_dir;

  // Atom-anchored normals through mu, resolved exactly on the boundary.
  detail::ExactDepthSolver solver(p, mu.coords());
  const std::size_t g = solver.groups();
  std::size_t anchored = 0;
  if (d >= 2 && g >= d - 1) {
    const double total = binomial(g, d - 1);
    const std::size_t cap = budget / 2;
    if (total <= static_cast<double>(cap)) {
      anchored = static_cast<std::size_t>(total);
      std::vector<std::size_t> idx(d - 1);
      std::iota(idx.begin(), idx.end(), 0);
      for (;;) {
        auto cand = solver.evaluate_subset(idx, 32, best);
        if (cand) {
          const double m = solver.mass(cand->mask);
          if (m < best) {
            best = m;
            best_dir = cand->dir;
          }
        }
        // Next combination.
        std::size_t k = d - 1;
        while (k > 0 && idx[k - 1] == g - (d - 1) + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < d - 1; ++j) idx[j] = idx[j - 1] + 1;
      }
    } else {
      anchored = cap;
      std::vector<std::size_t> idx;
      for (std::size_t s = 0; s < cap; ++s) {
        idx.clear();
        while (idx.size() < d - 1) {
          const auto c = static_cast<std::size_t>(rng.below(g));
          if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
        }
        std::sort(idx.begin(), idx.end());
        auto cand = solver.evaluate_subset(idx, 32, best);
        if (!cand) continue;
        const double m = solver.mass(cand->mask);
        if (m < best) {
          best = m;
          best_dir = cand->dir;
        }
      }
    }
  }
  // Uniform directions fill the rest of the budget.
  const std::size_t sphere = budget > anchored ? budget - anchored : 0;
  for (std::size_t s = 0; s < sphere; ++s) {
    const auto v = rng.unit_vector(d);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      for (std::size_t j = 0; j < d; ++j) c += v[j] * y[i * d + j];
      if (c >= 0.0) m += p.weight(i);
    }
    if (m < best) {
      best = m;
      best_dir = v;
    }
  }
  if (best_dir.empty()) {
    best = 1.0;
    best_dir = Direction::axis(d, 0).vec();
  }
  return {best, Direction::normalized(best_dir), DepthEngine::sampled};
}

DepthEngine resolve_engine(DepthEngine requested, const WeightedPointSet& p) {
  if (requested != DepthEngine::automatic) return requested;
  if (p.dim() == 1) return DepthEngine::exact1d;
  if (p.dim() == 2 && p.size() <= 4096) return DepthEngine::sweep2d;
  const auto distinct = p.size() <= 512 ? p.merged().size() : p.size();
  if (binomial(distinct, p.dim() - 1) <= 2e4) return DepthEngine::oracle;
  return DepthEngine::sampled;
}

DepthResult depth(const WeightedPointSet& p, const Point& mu, const DepthOptions& opts) {
  switch (resolve_engine(opts.engine, p)) {
    case DepthEngine::exact1d: return depth_1d(p, mu);
    case DepthEngine::sweep2d: return depth_2d_sweep(p, mu);
    case DepthEngine::oracle: return depth_oracle(p, mu);
    case DepthEngine::sampled:
    case DepthEngine::automatic: {
      SeededRng rng(opts.seed);
      return depth_sampled(p, mu, opts.budget, rng);
    }
  }
  throw InvalidArgument("unreachable depth engine");
}

DepthResult depth_bounded(const WeightedPointSet& p, const Point& mu, const DepthOptions& opts,
                          double stop_below) {
  if (resolve_engine(opts.engine, p) == DepthEngine::oracle) return oracle_impl(p, mu, stop_below);
  return depth(p, mu, opts);
}

DirectionalDepth::DirectionalDepth(const WeightedPointSet& p, std::size_t directions,
                                   SeededRng& rng)
    : dim_(p.dim()), n_(p.size()) {
  if (directions == 0) throw InvalidArgument("direction budget must be >= 1");
  dirs_.reserve(directions * dim_);
  proj_.resize(directions * n_);
  cum_.resize(directions * n_);
  std::vector<std::size_t> idx(n_);
  std::vector<double> raw(n_);
  for (std::size_t k = 0; k < directions; ++k) {
    const auto v = rng.unit_vector(dim_);
    dirs_.insert(dirs_.end(), v.begin(), v.end());
    for (std::size_t i = 0; i < n_; ++i) raw[i] = detail::dot(v, p.point(i));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
    double c = 0.0;
    for (std::size_t r = 0; r < n_; ++r) {
      proj_[k * n_ + r] = raw[idx[r]];
      c += p.weight(idx[r]);
      cum_[k * n_ + r] = c;
    }
  }
  order_.resize(directions);
  std::iota(order_.begin(), order_.end(), 0);
}

double DirectionalDepth::along(std::size_t k, double t) const {
  const double* row = proj_.data() + k * n_;
  const double* cum = cum_.data() + k * n_;
  const double total = cum[n_ - 1];
  // mass{x <= t} and mass{x >= t}
  const auto hi = static_cast<std::size_t>(std::upper_bound(row, row + n_, t) - row);
  const auto lo = static_cast<std::size_t>(std::lower_bound(row, row + n_, t) - row);
  const double below = hi == 0 ? 0.0 : cum[hi - 1];
  const double above = total - (lo == 0 ? 0.0 : cum[lo - 1]);
  return std::min(below, above);
}

double DirectionalDepth::evaluate(std::span<const double> mu, double prune_below) {
  if (mu.size() != dim_) throw DimensionMismatch(dim_, mu.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < order_.size(); ++r) {
    const std::size_t k = order_[r];
    const double t = detail::dot(std::span<const double>(dirs_.data() + k * dim_, dim_), mu);
    best = std::min(best, along(k, t));
    if (best < prune_below) {
      // Move the pruning direction forward so the next screen tries it early.
      if (r > 0) std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(r),
                             order_.begin() + static_cast<std::ptrdiff_t>(r) + 1);
      return best;
    }
  }
  return best;
}

DepthResult DirectionalDepth::evaluate_with_witness(std::span<const double> mu) const {
  if (mu.size() != dim_) throw DimensionMismatch(dim_, mu.size());
  double best = std::numeric_limits<double>::infinity();
  Vec dir;
  for (std::size_t k = 0; k < order_.size(); ++k) {
    std::span<const double> v(dirs_.data() + k * dim_, dim_);
    const double t = detail::dot(v, mu);
    const double* row = proj_.data() + k * n_;
    const double* cum = cum_.data() + k * n_;
    const auto hi = static_cast<std::size_t>(std::upper_bound(row, row + n_, t) - row);
    const auto lo = static_cast<std::size_t>(std::lower_bound(row, row + n_, t) - row);
    const double below = hi == 0 ? 0.0 : cum[hi - 1];
    const double above = cum[n_ - 1] - (lo == 0 ? 0.0 : cum[lo - 1]);
    if (above < best) {
      best = above;
      dir.assign(v.begin(), v.end());
    }
    if (below < best) {
      best = below;
      dir.assign(v.begin(), v.end());
      for (auto& x : dir) x = -x;
    }
  }
  return {best, Direction::normalized(dir), DepthEngine::sampled};
}

}  // namespace tukey
