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

#include "tukey/median.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "linalg.hpp"
#include "tukey/error.hpp"

namespace tukey {

using detail::Vec;

std::string_view to_string(MedianMethod method) {
  switch (method) {
    case MedianMethod::exact1d: return "exact1d";
    case MedianMethod::candidates: return "candidates";
    case MedianMethod::refined: return "refined";
  }
  return "unknown";
}

MedianResult median_1d(const WeightedPointSet& p) {
  if (p.dim() != 1) throw InvalidArgument("median_1d requires d = 1");
  const auto [lo, hi] = weighted_median_interval(p.coords(), p.weights());
  Point m{0.5 * (lo + hi)};
  const double value = depth_1d(p, m).value;
  return {std::move(m), value, 1, MedianMethod::exact1d, DepthEngine::exact1d};
}

namespace {

bool is_exact(DepthEngine e) { return e != DepthEngine::sampled; }

// Larger depth wins; then closer to the centroid; then lexicographic.
struct Ranked {
  double value;
  double dist2;
  const double* coords;
  std::size_t dim;
};

bool better(const Ranked& a, const Ranked& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
  return std::lexicographical_compare(a.coords, a.coords + a.dim, b.coords, b.coords + b.dim);
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

double diameter(const WeightedPointSet& p) {
  const std::size_t d = p.dim();
  Vec lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto x = p.point(i);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], x[j]);
      hi[j] = std::max(hi[j], x[j]);
    }
  }
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += (hi[j] - lo[j]) * (hi[j] - lo[j]);
  return std::sqrt(s);
}

}  // namespace

MedianResult median_candidates(const WeightedPointSet& p, const MedianOptions& opts,
                               const std::vector<Point>& extra) {
  const std::size_t d = p.dim();
  for (const auto& e : extra)
    if (e.dim() != d) throw DimensionMismatch(d, e.dim());
  const DepthEngine engine = resolve_engine(opts.depth.engine, p);
  DepthOptions dopts = opts.depth;
  dopts.engine = engine;
  const SeededRng root(opts.seed);

  const WeightedPointSet atoms = p.size() > 1 ? p.merged() : p;
  const std::size_t m = atoms.size();
  const Point centroid = p.centroid();

  // Priority candidates are fully evaluated first to seed the bound.
  std::vector<Vec> priority{centroid.vec(), p.coordinatewise_median().vec()};
  for (const auto& e : extra) priority.push_back(e.vec());

  std::vector<double> flat;
  flat.reserve((m + std::min(opts.max_pairs, m * (m - 1) / 2)) * d);
  for (std::size_t i = 0; i < m; ++i) {
    const auto x = atoms.point(i);
    flat.insert(flat.end(), x.begin(), x.end());
  }
  auto push_mid = [&](std::size_t i, std::size_t j) {
    const auto a = atoms.point(i), b = atoms.point(j);
    for (std::size_t k = 0; k < d; ++k) flat.push_back(0.5 * (a[k] + b[k]));
  };
  const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
  if (pairs <= static_cast<double>(opts.max_pairs)) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) push_mid(i, j);
  } else {
    SeededRng prng = root.split(2);
    for (std::size_t s = 0; s < opts.max_pairs; ++s) {
      const auto i = static_cast<std::size_t>(prng.below(m));
      auto j = static_cast<std::size_t>(prng.below(m - 1));
      if (j >= i) ++j;
      push_mid(std::min(i, j), std::max(i, j));
    }
  }
  for (const auto& v : priority) flat.insert(flat.end(), v.begin(), v.end());

  // Deduplicate exactly.
  const std::size_t total = flat.size() / d;
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return flat.data() + i * d; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + d, row(b), row(b) + d);
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) {
                            return std::equal(row(a), row(a) + d, row(b));
                          }),
              order.end());
  const std::size_t count = order.size();

  // Values below the incumbent only need to be known as such.
  auto full = [&](const double* c, double floor) {
    return depth_bounded(p, Point(Vec(c, c + d)), dopts, floor - 1e-12).value;
  };
  auto rank = [&](double value, const double* c) {
    return Ranked{value, dist2({c, d}, centroid.coords()), c, d};
  };

  std::vector<double> pri_flat;
  for (const auto& v : priority) pri_flat.insert(pri_flat.end(), v.begin(), v.end());
  Ranked best{-1.0, 0.0, nullptr, d};
  for (std::size_t i = 0; i < priority.size(); ++i) {
    const double* c = pri_flat.data() + i * d;
    const auto r = rank(full(c, best.value), c);
    if (best.coords == nullptr || better(r, best)) best = r;
  }

  if (count <= 8) {
    for (auto i : order) {
      const auto r = rank(full(row(i), best.value), row(i));
      if (better(r, best)) best = r;
    }
  } else {
    // Screen with a directional upper bound; drop anything already below.
    SeededRng srng = root.split(0);
    DirectionalDepth screen(p, opts.screen_directions, srng);
    std::vector<std::pair<double, std::size_t>> alive;
    for (auto i : order) {
      const double s = screen.evaluate({row(i), d}, best.value);
      if (s >= best.value) alive.emplace_back(s, i);
    }
    std::sort(alive.begin(), alive.end(), [&](const auto& a, const auto& b) {
      return better(rank(a.first, row(a.second)), rank(b.first, row(b.second)));
    });
    std::size_t evaluated = 0;
    for (const auto& [s, i] : alive) {
      if (s < best.value) break;
      if (!is_exact(engine) && evaluated >= opts.shortlist) break;
      ++evaluated;
      const auto r = rank(full(row(i), best.value), row(i));
      if (better(r, best)) best = r;
    }
  }
  Point point(Vec(best.coords, best.coords + d));
  return {std::move(point), best.value, count, MedianMethod::candidates, engine};
}

MedianResult median_refine(const WeightedPointSet& p, const Point& start,
                           const MedianOptions& opts, std::size_t steps, SeededRng& rng) {
  const std::size_t d = p.dim();
  if (start.dim() != d) throw DimensionMismatch(d, start.dim());
  const DepthEngine engine = resolve_engine(opts.depth.engine, p);
  DepthOptions dopts = opts.depth;
  dopts.engine = engine;
  const double start_value = depth(p, start, dopts).value;
  MedianResult result{start, start_value, 0, MedianMethod::refined, engine};
  if (steps == 0) return result;

  // The sampled engine climbs on a fixed direction set, so the objective is a
  // deterministic function of the point; the winner is re-scored afterwards.
  // Exact engines use the same set as a cheap upper bound to reject probes.
  SeededRng srng = rng.split(0);
  DirectionalDepth surrogate(p, std::max<std::size_t>(2 * opts.screen_directions, 1), srng);
  const bool exact = is_exact(engine);
  // Objective at x when it beats `floor`; otherwise some value not above it.
  auto objective = [&](const Vec& x, double floor) {
    const double screened = surrogate.evaluate(x, floor);
    if (!exact || screened <= floor) return screened;
    return depth_bounded(p, Point(x), dopts, floor + 1e-12).value;
  };

  Vec x = start.vec();
  double fx = exact ? start_value : surrogate.evaluate(x);
  double step = 0.25 * diameter(p);
  if (!(step > 0.0)) return result;
  std::size_t level = 0, probes = 0;
  for (std::size_t round = 0; round < steps && level < 8; ++round) {
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
      ++probes;
      const double fy = objective(y, fx);
      if (fy > fx + 1e-12) {
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
  result.candidate_count = probes;
  Point end(x);
  const double end_value = exact ? fx : depth(p, end, dopts).value;
  if (end_value > start_value) {
    result.point = std::move(end);
    result.achieved_depth = end_value;
  }
  return result;
}

MedianResult tukey_median(const WeightedPointSet& p, const MedianOptions& opts,
                          std::size_t refine_steps, const std::vector<Point>& extra) {
  auto best = median_candidates(p, opts, extra);
  SeededRng rng = SeededRng(opts.seed).split(1);
  auto refined = median_refine(p, best.point, opts, refine_steps, rng);
  refined.candidate_count += best.candidate_count;
  if (refined.achieved_depth <= best.achieved_depth) {
    best.candidate_count = refined.candidate_count;
    return best;
  }
  return refined;
}

}  // namespace tukey
