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

#ifndef TUKEY_DEPTH_HPP_
#define TUKEY_DEPTH_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "tukey/core_model.hpp"
#include "tukey/rng.hpp"

namespace tukey {

// Halfspace (Tukey) depth of mu: the least mass of a closed halfspace whose
// boundary passes through mu. Atoms sitting exactly at mu count on every side.

enum class DepthEngine { exact1d, sweep2d, sampled, oracle, automatic };

std::string_view to_string(DepthEngine engine);
DepthEngine parse_depth_engine(std::string_view name);

struct DepthResult {
  double value = 0.0;
  // Direction v whose closed halfspace {x : v^T (x - mu) >= 0} carries `value`.
  Direction witness = Direction::axis(1, 0);
  DepthEngine engine = DepthEngine::oracle;
};

// Largest C(n, d-1) the brute-force oracle will enumerate.
inline constexpr double kOracleGuard = 1e6;

DepthResult depth_1d(const WeightedPointSet& p, const Point& mu);

// Exact planar depth by an angular sweep over atom-perpendicular directions.
DepthResult depth_2d_sweep(const WeightedPointSet& p, const Point& mu);

// Exact depth for atomic p in any dimension. Candidate normals are orthogonal
// to (d-1)-subsets of atom offsets; atoms left on a candidate hyperplane are
// resolved by recursing into the hyperplane, which is the combinatorial form
// of rotating it infinitesimally. Throws GuardExceeded when C(n, d-1) > 1e6.
DepthResult depth_oracle(const WeightedPointSet& p, const Point& mu);

// Upper bound on depth: minimum over random unit directions plus normals of a
// random subsample of atom (d-1)-subsets through mu, `budget` in total.
DepthResult depth_sampled(const WeightedPointSet& p, const Point& mu,
                          std::size_t budget, SeededRng& rng);

struct DepthOptions {
  DepthEngine engine = DepthEngine::automatic;
  std::size_t budget = 2048;
  std::uint64_t seed = 0;
};

// automatic -> exact1d (d=1), sweep2d (d=2, n <= 4096), oracle when
// C(n_distinct, d-1) <= 2e4, otherwise sampled.
DepthEngine resolve_engine(DepthEngine requested, const WeightedPointSet& p);

DepthResult depth(const WeightedPointSet& p, const Point& mu, const DepthOptions& opts = {});

// Same as depth() when the result is at least `stop_below`. Otherwise the
// oracle may stop early and return any achievable halfspace mass below it.
DepthResult depth_bounded(const WeightedPointSet& p, const Point& mu, const DepthOptions& opts,
                          double stop_below);

// Fixed random direction set with presorted projections. Evaluates an upper
// bound on depth in O(K log n) per point; used to screen many candidate points
// against the same distribution.
class DirectionalDepth {
 public:
  DirectionalDepth(const WeightedPointSet& p, std::size_t directions, SeededRng& rng);

  std::size_t dim() const { return dim_; }
  std::size_t directions() const { return order_.size(); }

  // Minimum over the direction set. Stops early and returns a value below
  // `prune_below` as soon as the running minimum drops under it.
  double evaluate(std::span<const double> mu,
                  double prune_below = -std::numeric_limits<double>::infinity());

  DepthResult evaluate_with_witness(std::span<const double> mu) const;

 private:
  double along(std::size_t k, double t) const;

  std::size_t dim_;
  std::size_t n_;
  std::vector<double> dirs_;  // K x d
  std::vector<double> proj_;  // K x n, each row sorted
  std::vector<double> cum_;   // K x n, prefix masses of the sorted rows
  std::vector<std::size_t> order_;
};

}  // namespace tukey

#endif  // TUKEY_DEPTH_HPP_
