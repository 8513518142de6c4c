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

#ifndef TUKEY_METRICS_HPP_
#define TUKEY_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tukey/core_model.hpp"
#include "tukey/rng.hpp"

namespace tukey {

// Total variation between atomic distributions, atoms matched by exact
// coordinates: (1/2) sum |w_p - w_q|.
double tv_distance(const WeightedPointSet& p, const WeightedPointSet& q);

enum class HalfspaceMode { exact, sampled };

// sup over (v, t) of |p(v^T X >= t) - q(v^T X >= t)|. Exact mode handles d <= 2
// by enumerating every combinatorially distinct direction. Sampled mode scans
// `budget` random and atom-anchored directions exactly and is a lower bound.
double halfspace_metric(const WeightedPointSet& p, const WeightedPointSet& q,
                        HalfspaceMode mode = HalfspaceMode::exact, std::size_t budget = 2048,
                        std::uint64_t seed = 0);

// h(t) = sup over unit v of p*(v^T (X - center) > t), for t >= 0.
class DecayProfile {
 public:
  enum class Kind { gaussian, uniform_ball, piecewise, empirical };

  static DecayProfile gaussian(double sigma);
  static DecayProfile uniform_ball(double radius, std::size_t d);
  // Right-continuous steps: h = h_i on [t_i, t_{i+1}); first t must be 0 and
  // the h_i non-increasing in [0, 1].
  static DecayProfile piecewise(std::vector<std::pair<double, double>> steps);
  // Atomic source. Exact when the candidate direction set is small enough,
  // otherwise `budget` seeded directions (a lower bound on h).
  static DecayProfile empirical(const WeightedPointSet& p, const Point& center,
                                std::size_t budget = 2048, std::uint64_t seed = 0);
  // Decay of a named population about its own center.
  static DecayProfile of(const NamedDistribution& dist);
  // "gaussian:SIGMA", "ball:R" (dimension from `d`), "piecewise:t0:h0,t1:h1,...".
  static DecayProfile parse(std::string_view text, std::size_t d);

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::pair<double, double>>& steps() const { return steps_; }
  bool exact() const { return exact_; }

  double eval(double t) const;
  // inf{x >= 0 : h(x) < y}; +inf when empty or y <= 0.
  double inverse(double y) const;
  double at_zero() const { return eval(0.0); }

  std::string describe() const;

 private:
  DecayProfile() = default;

  Kind kind_ = Kind::gaussian;
  double scale_ = 1.0;
  std::size_t dim_ = 0;
  bool exact_ = true;
  std::vector<std::pair<double, double>> steps_;
  // Empirical: per direction, distinct projections in decreasing order and the
  // mass strictly above each (one extra trailing entry holds the total).
  std::vector<std::vector<double>> proj_;
  std::vector<std::vector<double>> above_;
};

std::string_view to_string(DecayProfile::Kind kind);

// Helper form of DecayProfile methods.
double decay_eval(const DecayProfile& h, double t);
double generalized_inverse(const DecayProfile& h, double y);

enum class BoundModel { additive, tv, projection };

std::string_view to_string(BoundModel model);
BoundModel parse_bound_model(std::string_view name);

struct BoundReport {
  BoundModel model;
  std::size_t d;
  double eps;
  double value;  // may be +inf
};

// Levels at or below this count as zero; keeps breakdown exact at 1/3.
inline constexpr double kLevelFloor = 1e-12;

BoundReport bias_bound_additive(const DecayProfile& h, double eps, std::size_t d);
BoundReport bias_bound_tv(const DecayProfile& h, double eps, std::size_t d);
BoundReport bias_bound_projection(const DecayProfile& h, double eps, std::size_t d = 0);
BoundReport bias_bound(BoundModel model, const DecayProfile& h, double eps, std::size_t d);

inline constexpr double kDefaultCvc = 0.5;

// (sqrt(eps) + sqrt(log(1/delta) / 2n))^2 + c_vc sqrt((d + 1 + log(1/delta)) / n),
// clipped to [0, 1].
double epsilon_tilde(double eps, std::size_t n, std::size_t d, double delta,
                     double c_vc = kDefaultCvc);

}  // namespace tukey

#endif  // TUKEY_METRICS_HPP_
