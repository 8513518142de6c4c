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

#include "tukey/corruption.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tukey/error.hpp"
#include "tukey/metrics.hpp"

namespace tukey {

std::string_view to_string(AttackVariant variant) {
  switch (variant) {
    case AttackVariant::pointmass_1d: return "pointmass_1d";
    case AttackVariant::ball_additive: return "ball_additive";
    case AttackVariant::tetrahedron_tv: return "tetrahedron_tv";
    case AttackVariant::shift_cluster: return "shift_cluster";
    case AttackVariant::none: return "none";
  }
  return "unknown";
}

AttackVariant parse_attack_variant(std::string_view name) {
  if (name == "pointmass_1d" || name == "pointmass") return AttackVariant::pointmass_1d;
  if (name == "ball_additive" || name == "ball") return AttackVariant::ball_additive;
  if (name == "tetrahedron_tv" || name == "tetrahedron") return AttackVariant::tetrahedron_tv;
  if (name == "shift_cluster" || name == "cluster") return AttackVariant::shift_cluster;
  if (name == "none") return AttackVariant::none;
  throw ConfigError("unknown attack variant '" + std::string(name) + "'");
}

void AttackSpec::validate() const {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("attack epsilon must lie in [0, 1)");
  if (variant != AttackVariant::none && variant != AttackVariant::pointmass_1d &&
      !cluster_point && !(z > 0.0 && std::isfinite(z)))
    throw InvalidArgument("attack distance z must be positive");
  if (variant == AttackVariant::pointmass_1d && !std::isfinite(z))
    throw InvalidArgument("attack position z must be finite");
}

std::string_view to_string(CorruptionMode mode) {
  switch (mode) {
    case CorruptionMode::additive_population: return "additive_population";
    case CorruptionMode::tv_population: return "tv_population";
    case CorruptionMode::oblivious_samples: return "oblivious_samples";
    case CorruptionMode::adaptive_samples: return "adaptive_samples";
  }
  return "unknown";
}

CorruptionMode parse_corruption_mode(std::string_view name) {
  if (name == "additive_population" || name == "additive") return CorruptionMode::additive_population;
  if (name == "tv_population" || name == "tv") return CorruptionMode::tv_population;
  if (name == "oblivious_samples" || name == "oblivious") return CorruptionMode::oblivious_samples;
  if (name == "adaptive_samples" || name == "adaptive") return CorruptionMode::adaptive_samples;
  throw ConfigError("unknown corruption mode '" + std::string(name) + "'");
}

namespace {

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in [0, 1)");
}

WeightedPointSet join(const WeightedPointSet& a, double wa, const WeightedPointSet& b, double wb) {
  std::vector<double> coords(a.coords().begin(), a.coords().end());
  coords.insert(coords.end(), b.coords().begin(), b.coords().end());
  std::vector<double> weights;
  weights.reserve(a.size() + b.size());
  for (double w : a.weights()) weights.push_back(wa * w);
  for (double w : b.weights()) weights.push_back(wb * w);
  return WeightedPointSet(a.dim(), std::move(coords), std::move(weights));
}

}  // namespace

WeightedPointSet additive_corrupt(const WeightedPointSet& p_star, double eps,
                                  const WeightedPointSet& r) {
  check_eps(eps);
  if (p_star.dim() != r.dim()) throw DimensionMismatch(p_star.dim(), r.dim());
  if (eps == 0.0) return p_star;
  return join(p_star, 1.0 - eps, r, eps);
}

TvCorruption tv_corrupt(const WeightedPointSet& p_star,
                        const std::vector<std::pair<std::size_t, double>>& remove,
                        const std::vector<Atom>& add) {
  std::vector<double> weights(p_star.weights().begin(), p_star.weights().end());
  double removed = 0.0, added = 0.0;
  for (const auto& [i, m] : remove) {
    if (i >= weights.size()) throw InvalidArgument("deletion names a missing atom");
    if (!(m >= 0.0)) throw InvalidArgument("deleted mass must be nonnegative");
    if (m > weights[i] + kWeightTolerance) throw InvalidArgument("deletion exceeds atom weight");
    weights[i] = std::max(0.0, weights[i] - m);
    removed += m;
  }
  for (const auto& a : add) {
    if (a.point.dim() != p_star.dim()) throw DimensionMismatch(p_star.dim(), a.point.dim());
    if (!(a.mass >= 0.0)) throw InvalidArgument("added mass must be nonnegative");
    added += a.mass;
  }
  if (std::abs(removed - added) > kWeightTolerance)
    throw InvalidArgument("deleted and added mass differ");
  std::vector<double> coords(p_star.coords().begin(), p_star.coords().end());
  for (const auto& a : add) {
    coords.insert(coords.end(), a.point.vec().begin(), a.point.vec().end());
    weights.push_back(a.mass);
  }
  WeightedPointSet out(p_star.dim(), std::move(coords), std::move(weights));
  out = out.merged();
  const double eps = tv_distance(p_star, out);
  return {std::move(out), eps};
}

AttackPair attack_tetrahedron(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw InvalidArgument("apex height must be positive");
  return {square_atoms_3d(), tetrahedron_atoms(z)};
}

WeightedPointSet attack_pointmass_1d(const WeightedPointSet& p_star, double z) {
  if (p_star.dim() != 1) throw InvalidArgument("pointmass attack is one-dimensional");
  return join(p_star, 0.5, WeightedPointSet::single(Point{z}), 0.5).merged();
}

AdaptiveCorruption adaptive_corrupt_samples(const WeightedPointSet& samples, double eps,
                                            const AttackPointFn& attack_point, SeededRng& rng) {
  check_eps(eps);
  if (!samples.has_uniform_weights()) throw InvalidArgument("adaptive corruption needs uniform weights");
  const std::size_t n = samples.size();
  const auto k = static_cast<std::size_t>(rng.binomial(n, eps));
  // Partial Fisher-Yates: the first k entries are a uniform k-subset.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<double> coords(samples.coords().begin(), samples.coords().end());
  const std::size_t d = samples.dim();
  for (std::size_t r = 0; r < k; ++r) {
    const Point x = attack_point(rng);
    if (x.dim() != d) throw DimensionMismatch(d, x.dim());
    std::copy(x.vec().begin(), x.vec().end(), coords.begin() + static_cast<std::ptrdiff_t>(idx[r] * d));
  }
  std::vector<double> weights(samples.weights().begin(), samples.weights().end());
  return {WeightedPointSet(d, std::move(coords), std::move(weights)), k};
}

Population Population::of(const NamedDistribution& dist) {
  Population pop;
  if (dist.kind() == DistributionKind::discrete_atoms) {
    const auto a = dist.atoms();
    for (std::size_t i = 0; i < a.size(); ++i) pop.atoms.push_back({a.point_at(i), a.weight(i)});
  } else {
    pop.base = dist;
    pop.base_mass = 1.0;
  }
  return pop;
}

std::size_t Population::dim() const {
  if (base) return base->dim();
  if (!atoms.empty()) return atoms.front().point.dim();
  return 0;
}

WeightedPointSet sample(const Population& pop, std::size_t n, SeededRng& rng) {
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  const std::size_t d = pop.dim();
  if (d == 0) throw InvalidArgument("empty population");
  if (pop.base && pop.atoms.empty()) return sample(*pop.base, n, rng);
  std::vector<double> cum;
  double acc = pop.base ? pop.base_mass : 0.0;
  for (const auto& a : pop.atoms) cum.push_back(acc += a.mass);
  std::vector<double> coords;
  coords.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform() * acc;
    if (pop.base && u < pop.base_mass) {
      const auto x = sample(*pop.base, 1, rng);
      coords.insert(coords.end(), x.coords().begin(), x.coords().end());
      continue;
    }
    auto k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    k = std::min(k, pop.atoms.size() - 1);
    const auto& v = pop.atoms[k].point.vec();
    coords.insert(coords.end(), v.begin(), v.end());
  }
  return WeightedPointSet(d, std::move(coords), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightedPointSet to_point_set(const Population& pop) {
  if (pop.base && pop.base_mass > 0.0)
    throw InvalidArgument("population has a continuous part; sample it instead");
  std::vector<Atom> atoms;
  for (const auto& a : pop.atoms)
    if (a.mass > 0.0) atoms.push_back(a);
  return WeightedPointSet::from_atoms(atoms).merged();
}

WeightedPointSet oblivious_pipeline(const NamedDistribution& p_star,
                                    const PopulationCorruptor& corruptor, std::size_t n,
                                    SeededRng& rng) {
  const Population pop = corruptor ? corruptor(p_star) : Population::of(p_star);
  return sample(pop, n, rng);
}

Point attack_point(const AttackSpec& spec, const Point& center) {
  const std::size_t d = center.dim();
  std::vector<double> x(center.vec());
  switch (spec.variant) {
    case AttackVariant::tetrahedron_tv:
      if (d != 3) throw InvalidArgument("tetrahedron attack is three-dimensional");
      x[0] -= 0.5;
      x[1] -= 0.5;
      x[2] += spec.z;
      return Point(std::move(x));
    case AttackVariant::pointmass_1d:
      if (d != 1) throw InvalidArgument("pointmass attack is one-dimensional");
      return Point{spec.z};
    default:
      break;
  }
  if (spec.cluster_point) {
    if (spec.cluster_point->dim() != d) throw DimensionMismatch(d, spec.cluster_point->dim());
    return *spec.cluster_point;
  }
  const double step = spec.z / std::sqrt(static_cast<double>(d));
  for (auto& c : x) c += step;
  return Point(std::move(x));
}

Population corrupt_population(const NamedDistribution& p_star, const AttackSpec& spec) {
  spec.validate();
  Population pop = Population::of(p_star);
  const double eps = spec.epsilon;
  if (spec.variant == AttackVariant::none || eps == 0.0) return pop;
  const Point far = attack_point(spec, p_star.center());
  if (spec.variant != AttackVariant::tetrahedron_tv) {
    pop.base_mass *= 1.0 - eps;
    for (auto& a : pop.atoms) a.mass *= 1.0 - eps;
    pop.atoms.push_back({far, eps});
    return pop;
  }
  if (pop.base) throw InvalidArgument("tetrahedron attack needs an atomic square template");
  // Delete from the atom at center + (1,1,0) first, then center + (1,-1,0),
  // then the rest in order.
  const auto& c = p_star.center().vec();
  auto at_offset = [&](const Atom& a, double ox, double oy) {
    return a.point[0] == c[0] + ox && a.point[1] == c[1] + oy && a.point[2] == c[2];
  };
  std::vector<std::size_t> order(pop.atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    auto rank = [&](std::size_t k) {
      if (at_offset(pop.atoms[k], 1, 1)) return 0;
      if (at_offset(pop.atoms[k], 1, -1)) return 1;
      return 2;
    };
    return rank(i) < rank(j);
  });
  double left = eps;
  for (auto k : order) {
    const double take = std::min(left, pop.atoms[k].mass);
    pop.atoms[k].mass -= take;
    left -= take;
    if (left <= 0.0) break;
  }
  pop.atoms.push_back({far, eps - std::max(left, 0.0)});
  return pop;
}

}  // namespace tukey
