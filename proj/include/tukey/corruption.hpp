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

#ifndef TUKEY_CORRUPTION_HPP_
#define TUKEY_CORRUPTION_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "tukey/core_model.hpp"
#include "tukey/rng.hpp"

namespace tukey {

enum class AttackVariant { pointmass_1d, ball_additive, tetrahedron_tv, shift_cluster, none };

std::string_view to_string(AttackVariant variant);
// Accepts the short names pointmass, ball and tetrahedron as well.
AttackVariant parse_attack_variant(std::string_view name);

struct AttackSpec {
  AttackVariant variant = AttackVariant::none;
  double epsilon = 0.0;
  double z = 100.0;
  std::optional<Point> cluster_point;

  // Throws InvalidArgument on an out-of-range level or distance.
  void validate() const;
};

enum class CorruptionMode { additive_population, tv_population, oblivious_samples, adaptive_samples };

std::string_view to_string(CorruptionMode mode);
CorruptionMode parse_corruption_mode(std::string_view name);

// (1 - eps) p* + eps r.
WeightedPointSet additive_corrupt(const WeightedPointSet& p_star, double eps,
                                  const WeightedPointSet& r);

struct TvCorruption {
  WeightedPointSet dist;
  double eps;  // realized TV distance to p*
};

// Removes `remove[k].second` mass from atom `remove[k].first` and adds the
// fragment `add`; removed and added totals must agree.
TvCorruption tv_corrupt(const WeightedPointSet& p_star,
                        const std::vector<std::pair<std::size_t, double>>& remove,
                        const std::vector<Atom>& add);

struct AttackPair {
  WeightedPointSet p_star;
  WeightedPointSet p;
};

// Square (+-1, +-1, 0) and the tetrahedron with (1,1,0) moved to (-0.5,-0.5,z).
AttackPair attack_tetrahedron(double z);

// 0.5 p* + 0.5 delta_z on the line.
WeightedPointSet attack_pointmass_1d(const WeightedPointSet& p_star, double z);

struct AdaptiveCorruption {
  WeightedPointSet samples;
  std::size_t replaced = 0;
};

using AttackPointFn = std::function<Point(SeededRng&)>;

// n' ~ Binomial(n, eps) sample points, chosen without replacement, are
// overwritten by attack_point(rng). Requires uniform weights.
AdaptiveCorruption adaptive_corrupt_samples(const WeightedPointSet& samples, double eps,
                                            const AttackPointFn& attack_point, SeededRng& rng);

// Mixture of an optional parametric part and explicit atoms.
struct Population {
  std::optional<NamedDistribution> base;
  double base_mass = 0.0;
  std::vector<Atom> atoms;

  static Population of(const NamedDistribution& dist);
  std::size_t dim() const;
};

WeightedPointSet sample(const Population& pop, std::size_t n, SeededRng& rng);

// Exact atomic form; only for populations without a parametric part.
WeightedPointSet to_point_set(const Population& pop);

using PopulationCorruptor = std::function<Population(const NamedDistribution&)>;

// Corrupt the population first, then draw n samples from it.
WeightedPointSet oblivious_pipeline(const NamedDistribution& p_star,
                                    const PopulationCorruptor& corruptor, std::size_t n,
                                    SeededRng& rng);

// Where the attack places its mass for a population centered at `center`:
// the apex for tetrahedron_tv, z on the line for pointmass_1d, otherwise
// cluster_point or center + z (1,...,1)/sqrt(d).
Point attack_point(const AttackSpec& spec, const Point& center);

// Population-level corruption of p* by `spec`. Additive variants mix in a
// point mass; tetrahedron_tv deletes eps mass from the (1,1,0) side of a
// square template (then from (1,-1,0)) and moves it to the apex.
Population corrupt_population(const NamedDistribution& p_star, const AttackSpec& spec);

}  // namespace tukey

#endif  // TUKEY_CORRUPTION_HPP_
