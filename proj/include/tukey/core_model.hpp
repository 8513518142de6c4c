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

#ifndef TUKEY_CORE_MODEL_HPP_
#define TUKEY_CORE_MODEL_HPP_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tukey/rng.hpp"

namespace tukey {

// Tolerance on the total weight of a WeightedPointSet.
inline constexpr double kWeightTolerance = 1e-9;

// A location in R^d with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t d) { return Point(std::vector<double>(d, 0.0)); }

  std::size_t dim() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& vec() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

// A nonzero vector defining halfspaces {x : v^T x >= t}. `normalized()` makes
// a unit vector; `raw()` keeps the given length.
class Direction {
 public:
  static Direction normalized(std::span<const double> v);
  static Direction raw(std::vector<double> v);
  static Direction axis(std::size_t d, std::size_t i, double sign = 1.0);

  std::size_t dim() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& vec() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  bool is_normalized() const { return normalized_; }
  Direction negated() const;

 private:
  Direction(std::vector<double> v, bool normalized)
      : coords_(std::move(v)), normalized_(normalized) {}
  std::vector<double> coords_;
  bool normalized_ = false;
};

// Loose atom used for fragments of mass that need not sum to one.
struct Atom {
  Point point;
  double mass = 0.0;
};

// Finite discrete distribution: nonempty atoms in a shared dimension with
// nonnegative weights summing to one. Coordinates are stored row-major.
class WeightedPointSet {
 public:
  WeightedPointSet(std::size_t dim, std::vector<double> coords,
                   std::vector<double> weights);

  static WeightedPointSet from_points(const std::vector<Point>& points,
                                      std::vector<double> weights);
  static WeightedPointSet uniform(const std::vector<Point>& points);
  static WeightedPointSet from_atoms(const std::vector<Atom>& atoms);
  static WeightedPointSet single(const Point& p);

  std::size_t size() const { return weights_.size(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  Point point_at(std::size_t i) const;
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> coords() const { return coords_; }

  // Combine atoms with identical coordinates (exact equality); output atoms
  // are sorted lexicographically and zero-weight atoms are dropped.
  WeightedPointSet merged() const;

  // Each atom shifted by c.
  WeightedPointSet translated(std::span<const double> c) const;

  Point centroid() const;
  // Per-coordinate weighted median; midpoint when the median set is an interval.
  Point coordinatewise_median() const;

  bool has_uniform_weights(double tol = 1e-12) const;

  friend bool operator==(const WeightedPointSet&, const WeightedPointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

enum class DistributionKind { gaussian_isotropic, uniform_ball, discrete_atoms };

std::string_view to_string(DistributionKind kind);
DistributionKind parse_distribution_kind(std::string_view name);

// Parametric population model. Gaussian and ball are halfspace-symmetric about
// `center` by construction; atom templates must pass symmetry_check.
class NamedDistribution {
 public:
  static NamedDistribution gaussian(Point center, double sigma);
  static NamedDistribution uniform_ball(Point center, double radius);
  // `offsets` are atom positions relative to `center`.
  static NamedDistribution discrete_atoms(Point center, WeightedPointSet offsets,
                                          double tol = 1e-12);

  DistributionKind kind() const { return kind_; }
  const Point& center() const { return center_; }
  double scale() const { return scale_; }
  std::size_t dim() const { return center_.dim(); }
  const std::optional<WeightedPointSet>& offsets() const { return offsets_; }

  // Atoms at absolute positions (discrete_atoms only).
  WeightedPointSet atoms() const;

  NamedDistribution recentered(Point center) const;

 private:
  NamedDistribution(DistributionKind kind, Point center, double scale,
                    std::optional<WeightedPointSet> offsets)
      : kind_(kind), center_(std::move(center)), scale_(scale), offsets_(std::move(offsets)) {}

  DistributionKind kind_;
  Point center_;
  double scale_;
  std::optional<WeightedPointSet> offsets_;
};

// Weighted median set [lo, hi] of scalar values: every m in it has mass at
// least 1/2 on both closed sides. Weights need not be normalized.
std::pair<double, double> weighted_median_interval(std::span<const double> values,
                                                   std::span<const double> weights);

// (v^T x_i, w_i) for each atom, in atom order.
std::vector<std::pair<double, double>> project_points(const WeightedPointSet& p,
                                                      const Direction& v);

// Mass of {x : v^T x >= t} (closed) or {x : v^T x > t} (open).
double halfspace_mass(const WeightedPointSet& p, const Direction& v, double t,
                      bool closed);

// n iid draws with weight 1/n each.
WeightedPointSet sample(const NamedDistribution& dist, std::size_t n, SeededRng& rng);

// Point-reflection test: every atom offset o from `center` has a partner at -o
// carrying the same total weight (within tol).
bool symmetry_check(const WeightedPointSet& atoms, const Point& center,
                    double tol = 1e-12);

// The square template (+-1, +-1, 0) with uniform weights, and the tetrahedron
// obtained by moving (1,1,0) to (-0.5,-0.5,z).
WeightedPointSet square_atoms_3d();
WeightedPointSet tetrahedron_atoms(double z);

}  // namespace tukey

#endif  // TUKEY_CORE_MODEL_HPP_
