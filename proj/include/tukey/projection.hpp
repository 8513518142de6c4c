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

#ifndef TUKEY_PROJECTION_HPP_
#define TUKEY_PROJECTION_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tukey/core_model.hpp"
#include "tukey/metrics.hpp"
#include "tukey/rng.hpp"

namespace tukey {

// Translation family {template recentered at mu : mu in search_box}. The
// template is halfspace-symmetric, so every member shares `decay`.
struct TemplateFamily {
  NamedDistribution templ;
  DecayProfile decay;
  std::vector<std::pair<double, double>> search_box;

  // Decay taken from the template; box must match its dimension.
  static TemplateFamily make(NamedDistribution templ,
                             std::vector<std::pair<double, double>> search_box);
  // Checks the box and that `decay` dominates the template's own tail on a
  // 32-point grid.
  void validate() const;
  std::size_t dim() const { return templ.dim(); }
};

// Per-coordinate [min, max] of the atoms, widened by `margin` on each side.
std::vector<std::pair<double, double>> bounding_box(const WeightedPointSet& p, double margin = 0.0);

struct ProjectionResult {
  Point mu_hat;
  double objective = 0.0;
  std::size_t evaluations = 0;
};

// Halfspace distance between the family member at mu and p_hat, maximized over
// a fixed direction set chosen at construction (random unit vectors plus
// normals of hyperplanes through d atoms of p_hat). Along each direction the
// sup over thresholds is exact. A lower bound on the full halfspace metric.
class FamilyObjective {
 public:
  FamilyObjective(const TemplateFamily& family, const WeightedPointSet& p_hat,
                  std::size_t budget, std::uint64_t seed);

  // Returns as soon as the running value exceeds `stop_above`.
  double evaluate(std::span<const double> mu,
                  double stop_above = std::numeric_limits<double>::infinity()) const;

  std::size_t directions() const { return offsets_.size() - 1; }

 private:
  double along_continuous(std::size_t k, double c, double best) const;
  double along_discrete(std::size_t k, double c) const;
  double template_cdf(double t) const;

  const TemplateFamily* family_;
  std::size_t dim_;
  std::vector<double> dirs_;          // K x d
  std::vector<std::size_t> offsets_;  // row starts into vals_/cum_
  std::vector<double> vals_;          // distinct sorted projections of p_hat
  std::vector<double> cum_;           // mass <= each value
  std::vector<double> tvals_;         // K x m sorted template projections
  std::vector<double> tcum_;          // K x m mass <= each
  std::size_t m_ = 0;
};

double family_distance(const Point& mu, const TemplateFamily& family,
                       const WeightedPointSet& p_hat, std::size_t budget, std::uint64_t seed);

struct ProjectionConfig {
  std::size_t budget = 2048;
  std::size_t random_starts = 2;
  std::size_t steps = 64;
  // Start from the Tukey candidate maximizer as well (computed if no hint).
  bool tukey_start = true;
  std::optional<Point> tukey_hint;
  std::vector<Point> extra_starts;
};

// Multistart pattern search for the family member closest to p_hat. Starts:
// coordinate-wise median, centroid, the Tukey candidate, seeded points in the
// search box and, for atomic templates, data atoms aligned with template atoms.
// Returns the best point visited (ties to the lexicographically smaller).
ProjectionResult project_estimate(const WeightedPointSet& p_hat, const TemplateFamily& family,
                                  const ProjectionConfig& config, SeededRng& rng);

// ||mu_hat - true_center|| <= 2 h^{-1}(1/2 - eps_tilde); vacuous when
// eps_tilde >= 1/2.
bool certify_projection_bound(const ProjectionResult& result, const TemplateFamily& family,
                              const Point& true_center, double eps_tilde);

}  // namespace tukey

#endif  // TUKEY_PROJECTION_HPP_
