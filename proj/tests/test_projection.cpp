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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "tukey/corruption.hpp"
#include "tukey/error.hpp"
#include "tukey/metrics.hpp"
#include "tukey/projection.hpp"

using namespace tukey;

namespace {

double norm(const Point& p) {
  double s = 0.0;
  for (double x : p.coords()) s += x * x;
  return std::sqrt(s);
}

TemplateFamily square_family() {
  return TemplateFamily::make(NamedDistribution::discrete_atoms(Point::zeros(3), square_atoms_3d()),
                              {{-5, 5}, {-5, 5}, {-5, 60}});
}

// Kolmogorov-Smirnov distance between a one-dimensional sample and N(mu, 1).
double ks_oracle(const WeightedPointSet& p, double mu) {
  std::vector<double> x;
  for (std::size_t i = 0; i < p.size(); ++i) x.push_back(p.point(i)[0]);
  std::sort(x.begin(), x.end());
  const double n = double(x.size());
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = 1.0 - oracle::normal_sf(x[i] - mu);
    best = std::max({best, std::abs(f - double(i) / n), std::abs(double(i + 1) / n - f)});
  }
  return best;
}

}  // namespace

TEST_SUITE("projection") {

TEST_CASE("point template at its own atom") {
  const auto fam = TemplateFamily::make(
      NamedDistribution::discrete_atoms(Point{0.0, 0.0}, WeightedPointSet::single(Point{0.0, 0.0})),
      {{-3, 3}, {-3, 3}});
  CHECK(family_distance(Point{1.0, 2.0}, fam, WeightedPointSet::single(Point{1.0, 2.0}), 256, 1) == 0.0);
}

TEST_CASE("gaussian objective in one dimension") {
  const auto fam = TemplateFamily::make(NamedDistribution::gaussian(Point{0.0}, 1.0), {{-10, 10}});
  SeededRng rng(61);
  const auto p = sample(NamedDistribution::gaussian(Point{0.0}, 1.0), 1000, rng);
  const double at_center = family_distance(Point{0.0}, fam, p, 64, 1);
  CHECK(at_center <= 0.06);
  CHECK(at_center == doctest::Approx(ks_oracle(p, 0.0)).epsilon(1e-6));
  const double shifted = family_distance(Point{3.0}, fam, p, 64, 1);
  CHECK(shifted >= 0.8);
  CHECK(shifted == doctest::Approx(ks_oracle(p, 3.0)).epsilon(1e-6));
}

TEST_CASE("uncorrupted square is recovered exactly") {
  SeededRng rng(62);
  const auto r = project_estimate(square_atoms_3d(), square_family(), {}, rng);
  CHECK(r.mu_hat == Point{0, 0, 0});
  CHECK(r.objective == 0.0);
  CHECK(certify_projection_bound(r, square_family(), Point::zeros(3), 0.0));
  CHECK(bias_bound_projection(square_family().decay, 0.0).value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("tetrahedron stays within the square bound") {
  for (double z : {10.0, 50.0}) {
    SeededRng rng(63);
    const auto r = project_estimate(tetrahedron_atoms(z), square_family(), {}, rng);
    const double bound = bias_bound_projection(square_family().decay, 0.25).value;
    CHECK(bound == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(norm(r.mu_hat) <= bound);
    CHECK(r.objective <= family_distance(Point::zeros(3), square_family(), tetrahedron_atoms(z), 2048, 0) + 1e-12);
  }
}

TEST_CASE("gaussian sample under heavy adaptive corruption") {
  const auto gauss = NamedDistribution::gaussian(Point::zeros(3), 1.0);
  SeededRng rng(64);
  const auto clean = sample(gauss, 2000, rng);
  SeededRng adv(65);
  const auto hit = adaptive_corrupt_samples(clean, 0.3, [](SeededRng&) { return Point{30.0, 30.0, 30.0}; }, adv);
  const auto fam = TemplateFamily::make(gauss, bounding_box(hit.samples, 1.0));
  SeededRng est(66);
  const auto r = project_estimate(hit.samples, fam, {}, est);
  const double eps_t = epsilon_tilde(0.3, 2000, 3, 0.05, 0.5);
  CHECK(norm(r.mu_hat) <= bias_bound_projection(fam.decay, eps_t).value);
}

TEST_CASE("certification is vacuous at one half") {
  ProjectionResult r{Point{100.0, 0.0, 0.0}, 0.5, 1};
  CHECK(certify_projection_bound(r, square_family(), Point::zeros(3), 0.5));
  CHECK_FALSE(certify_projection_bound(r, square_family(), Point::zeros(3), 0.1));
}

TEST_CASE("translation equivariance") {
  SeededRng rng(67);
  const auto gauss = NamedDistribution::gaussian(Point::zeros(2), 1.0);
  const auto p = sample(gauss, 300, rng);
  const std::vector<double> c{4.0, -2.0};
  const auto box = bounding_box(p, 1.0);
  std::vector<std::pair<double, double>> shifted_box;
  for (std::size_t j = 0; j < 2; ++j) shifted_box.emplace_back(box[j].first + c[j], box[j].second + c[j]);
  SeededRng r1(68), r2(68);
  ProjectionConfig cfg;
  cfg.tukey_start = false;
  const auto a = project_estimate(p, TemplateFamily::make(gauss, box), cfg, r1);
  const auto b = project_estimate(p.translated(c), TemplateFamily::make(gauss, shifted_box), cfg, r2);
  CHECK(std::abs(b.mu_hat[0] - a.mu_hat[0] - c[0]) <= 1e-6);
  CHECK(std::abs(b.mu_hat[1] - a.mu_hat[1] - c[1]) <= 1e-6);
}

TEST_CASE("objective at the center shrinks with n") {
  const auto gauss = NamedDistribution::gaussian(Point::zeros(2), 1.0);
  const auto fam = TemplateFamily::make(gauss, {{-5, 5}, {-5, 5}});
  std::vector<double> medians;
  for (std::size_t n : {500, 2000, 8000}) {
    std::vector<double> vals;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SeededRng rng(seed * 7919 + n);
      vals.push_back(family_distance(Point::zeros(2), fam, sample(gauss, n, rng), 256, seed));
    }
    std::sort(vals.begin(), vals.end());
    medians.push_back(0.5 * (vals[4] + vals[5]));
  }
  CHECK(medians[0] > medians[1]);
  CHECK(medians[1] > medians[2]);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(TemplateFamily::make(NamedDistribution::gaussian(Point::zeros(2), 1.0), {{-1, 1}}),
                  InvalidArgument);
  CHECK_THROWS_AS(TemplateFamily::make(NamedDistribution::gaussian(Point::zeros(1), 1.0), {{1, -1}}),
                  InvalidArgument);
  auto fam = TemplateFamily::make(NamedDistribution::gaussian(Point::zeros(1), 2.0), {{-1, 1}});
  fam.decay = DecayProfile::gaussian(0.5);
  CHECK_THROWS_AS(fam.validate(), InvalidArgument);
}

}  // TEST_SUITE
