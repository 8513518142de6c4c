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

#include "tukey/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linalg.hpp"
#include "tukey/error.hpp"

namespace tukey {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " has a non-finite coordinate");
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("point must have dimension >= 1");
  require_finite(coords_, "point");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Direction Direction::normalized(std::span<const double> v) {
  std::vector<double> c(v.begin(), v.end());
  if (c.empty()) throw InvalidArgument("direction must have dimension >= 1");
  require_finite(c, "direction");
  if (!detail::normalize(c)) throw InvalidArgument("direction must be nonzero");
  return Direction(std::move(c), true);
}

Direction Direction::raw(std::vector<double> v) {
  if (v.empty()) throw InvalidArgument("direction must have dimension >= 1");
  require_finite(v, "direction");
  if (!(detail::norm(v) > 0.0)) throw InvalidArgument("direction must be nonzero");
  const bool unit = std::abs(detail::norm(v) - 1.0) <= 1e-12;
  return Direction(std::move(v), unit);
}

Direction Direction::axis(std::size_t d, std::size_t i, double sign) {
  if (i >= d) throw InvalidArgument("axis index out of range");
  std::vector<double> v(d, 0.0);
  v[i] = sign < 0 ? -1.0 : 1.0;
  return Direction(std::move(v), true);
}

Direction Direction::negated() const {
  auto v = coords_;
  for (auto& x : v) x = -x;
  return Direction(std::move(v), normalized_);
}

WeightedPointSet::WeightedPointSet(std::size_t dim, std::vector<double> coords,
                                   std::vector<double> weights)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  if (dim_ == 0) throw InvalidArgument("point set dimension must be >= 1");
  if (weights_.empty()) throw InvalidArgument("point set must be nonempty");
  if (coords_.size() != weights_.size() * dim_)
    throw InvalidArgument("coordinate array does not match size * dim");
  require_finite(coords_, "point set");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("weights must be finite and >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTolerance)
    throw InvalidArgument("weights must sum to 1 (got " + std::to_string(total) + ")");
}

WeightedPointSet WeightedPointSet::from_points(const std::vector<Point>& points,
                                               std::vector<double> weights) {
  if (points.empty()) throw InvalidArgument("point set must be nonempty");
  if (points.size() != weights.size()) throw InvalidArgument("points/weights length mismatch");
  const std::size_t d = points.front().dim();
  std::vector<double> coords;
  coords.reserve(points.size() * d);
  for (const auto& p : points) {
    if (p.dim() != d) throw DimensionMismatch(d, p.dim());
    coords.insert(coords.end(), p.coords().begin(), p.coords().end());
  }
  return WeightedPointSet(d, std::move(coords), std::move(weights));
}

WeightedPointSet WeightedPointSet::uniform(const std::vector<Point>& points) {
  if (points.empty()) throw InvalidArgument("point set must be nonempty");
  return from_points(points, std::vector<double>(points.size(), 1.0 / static_cast<double>(points.size())));
}

WeightedPointSet WeightedPointSet::from_atoms(const std::vector<Atom>& atoms) {
  std::vector<Point> pts;
  std::vector<double> w;
  pts.reserve(atoms.size());
  w.reserve(atoms.size());
  for (const auto& a : atoms) {
    pts.push_back(a.point);
    w.push_back(a.mass);
  }
  return from_points(pts, std::move(w));
}

WeightedPointSet WeightedPointSet::single(const Point& p) { return from_points({p}, {1.0}); }

Point WeightedPointSet::point_at(std::size_t i) const {
  auto s = point(i);
  return Point(std::vector<double>(s.begin(), s.end()));
}

WeightedPointSet WeightedPointSet::merged() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto pa = point(a), pb = point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  std::vector<double> coords, weights;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto i = order[k];
    auto pi = point(i);
    if (!weights.empty()) {
      std::span<const double> last(coords.data() + coords.size() - dim_, dim_);
      if (std::equal(pi.begin(), pi.end(), last.begin())) {
        weights.back() += weights_[i];
        continue;
      }
    }
    coords.insert(coords.end(), pi.begin(), pi.end());
    weights.push_back(weights_[i]);
  }
  // Drop atoms that carry no mass.
  std::vector<double> c2, w2;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    c2.insert(c2.end(), coords.begin() + static_cast<std::ptrdiff_t>(i * dim_),
              coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
    w2.push_back(weights[i]);
  }
  return WeightedPointSet(dim_, std::move(c2), std::move(w2));
}

WeightedPointSet WeightedPointSet::translated(std::span<const double> c) const {
  if (c.size() != dim_) throw DimensionMismatch(dim_, c.size());
  auto coords = coords_;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < dim_; ++j) coords[i * dim_ + j] += c[j];
  return WeightedPointSet(dim_, std::move(coords), weights_);
}

Point WeightedPointSet::centroid() const {
  std::vector<double> c(dim_, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    total += weights_[i];
    for (std::size_t j = 0; j < dim_; ++j) c[j] += weights_[i] * coords_[i * dim_ + j];
  }
  for (auto& x : c) x /= total;
  return Point(std::move(c));
}

Point WeightedPointSet::coordinatewise_median() const {
  std::vector<double> m(dim_);
  std::vector<double> col(size());
  for (std::size_t j = 0; j < dim_; ++j) {
    for (std::size_t i = 0; i < size(); ++i) col[i] = coords_[i * dim_ + j];
    auto [lo, hi] = weighted_median_interval(col, weights_);
    m[j] = 0.5 * (lo + hi);
  }
  return Point(std::move(m));
}

bool WeightedPointSet::has_uniform_weights(double tol) const {
  const double u = 1.0 / static_cast<double>(size());
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double w) { return std::abs(w - u) <= tol; });
}

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::gaussian_isotropic: return "gaussian_isotropic";
    case DistributionKind::uniform_ball: return "uniform_ball";
    case DistributionKind::discrete_atoms: return "discrete_atoms";
  }
  return "unknown";
}

DistributionKind parse_distribution_kind(std::string_view name) {
  if (name == "gaussian_isotropic" || name == "gaussian") return DistributionKind::gaussian_isotropic;
  if (name == "uniform_ball" || name == "ball") return DistributionKind::uniform_ball;
  if (name == "discrete_atoms" || name == "atoms") return DistributionKind::discrete_atoms;
  throw ConfigError("unknown distribution variant '" + std::string(name) + "'");
}

NamedDistribution NamedDistribution::gaussian(Point center, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("gaussian sigma must be > 0");
  return NamedDistribution(DistributionKind::gaussian_isotropic, std::move(center), sigma, std::nullopt);
}

NamedDistribution NamedDistribution::uniform_ball(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball radius must be > 0");
  return NamedDistribution(DistributionKind::uniform_ball, std::move(center), radius, std::nullopt);
}

NamedDistribution NamedDistribution::discrete_atoms(Point center, WeightedPointSet offsets,
                                                    double tol) {
  if (offsets.dim() != center.dim()) throw DimensionMismatch(center.dim(), offsets.dim());
  if (!symmetry_check(offsets, Point::zeros(center.dim()), tol))
    throw InvalidArgument("atom template is not point-symmetric about its center");
  return NamedDistribution(DistributionKind::discrete_atoms, std::move(center), 0.0,
                           std::move(offsets));
}

WeightedPointSet NamedDistribution::atoms() const {
  if (!offsets_) throw InvalidArgument("distribution has no atoms");
  return offsets_->translated(center_.coords());
}

NamedDistribution NamedDistribution::recentered(Point center) const {
  if (center.dim() != dim()) throw DimensionMismatch(dim(), center.dim());
  return NamedDistribution(kind_, std::move(center), scale_, offsets_);
}

std::pair<double, double> weighted_median_interval(std::span<const double> values,
                                                   std::span<const double> weights) {
  if (values.empty() || values.size() != weights.size())
    throw InvalidArgument("weighted median needs matching nonempty inputs");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  // Distinct values with their masses.
  std::vector<double> v, m;
  for (auto i : order) {
    if (!v.empty() && v.back() == values[i]) {
      m.back() += weights[i];
    } else {
      v.push_back(values[i]);
      m.push_back(weights[i]);
    }
  }
  double total = 0.0;
  for (double x : m) total += x;
  const double half = 0.5 * total;
  const double tol = 1e-12 * total;
  double lo = v.front();
  double cum = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    cum += m[k];
    if (cum >= half - tol) {
      lo = v[k];
      break;
    }
  }
  double hi = v.back();
  double tail = 0.0;
  for (std::size_t k = v.size(); k-- > 0;) {
    tail += m[k];
    if (tail >= half - tol) {
      hi = v[k];
      break;
    }
  }
  if (hi < lo) std::swap(lo, hi);
  return {lo, hi};
}

std::vector<std::pair<double, double>> project_points(const WeightedPointSet& p,
                                                      const Direction& v) {
  if (v.dim() != p.dim()) throw DimensionMismatch(p.dim(), v.dim());
  std::vector<std::pair<double, double>> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out.emplace_back(detail::dot(p.point(i), v.coords()), p.weight(i));
  return out;
}

double halfspace_mass(const WeightedPointSet& p, const Direction& v, double t, bool closed) {
  if (v.dim() != p.dim()) throw DimensionMismatch(p.dim(), v.dim());
  double mass = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = detail::dot(p.point(i), v.coords());
    if (closed ? s >= t : s > t) mass += p.weight(i);
  }
  return std::clamp(mass, 0.0, 1.0);
}

WeightedPointSet sample(const NamedDistribution& dist, std::size_t n, SeededRng& rng) {
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  const std::size_t d = dist.dim();
  const auto c = dist.center().coords();
  std::vector<double> coords(n * d);
  switch (dist.kind()) {
    case DistributionKind::gaussian_isotropic:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
          coords[i * d + j] = c[j] + dist.scale() * rng.normal();
      break;
    case DistributionKind::uniform_ball:
      for (std::size_t i = 0; i < n; ++i) {
        const auto u = rng.unit_vector(d);
        const double r = dist.scale() * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
        for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = c[j] + r * u[j];
      }
      break;
    case DistributionKind::discrete_atoms: {
      const auto atoms = dist.atoms();
      std::vector<double> cum(atoms.size());
      std::partial_sum(atoms.weights().begin(), atoms.weights().end(), cum.begin());
      for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform() * cum.back();
        auto k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
        k = std::min(k, atoms.size() - 1);
        auto pk = atoms.point(k);
        std::copy(pk.begin(), pk.end(), coords.begin() + static_cast<std::ptrdiff_t>(i * d));
      }
      break;
    }
  }
  return WeightedPointSet(d, std::move(coords),
                          std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool symmetry_check(const WeightedPointSet& atoms, const Point& center, double tol) {
  if (atoms.dim() != center.dim()) return false;
  const auto m = atoms.merged();
  const std::size_t d = m.dim();
  auto reflected_matches = [&](std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < d; ++j) {
      const double oi = m.point(i)[j] - center[j];
      const double ok = m.point(k)[j] - center[j];
      if (std::abs(oi + ok) > tol * (1.0 + std::abs(oi))) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool found = false;
    for (std::size_t k = 0; k < m.size() && !found; ++k)
      found = reflected_matches(i, k) && std::abs(m.weight(i) - m.weight(k)) <= std::max(tol, 1e-15);
    if (!found) return false;
  }
  return true;
}

WeightedPointSet square_atoms_3d() {
  return WeightedPointSet::uniform({{-1, -1, 0}, {-1, 1, 0}, {1, -1, 0}, {1, 1, 0}});
}

WeightedPointSet tetrahedron_atoms(double z) {
  if (!(z > 0.0)) throw InvalidArgument("apex height z must be > 0");
  return WeightedPointSet::uniform({{-1, -1, 0}, {-1, 1, 0}, {1, -1, 0}, {-0.5, -0.5, z}});
}

}  // namespace tukey
