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
#include <limits>

#include "doctest.h"
#include "tukey/core_model.hpp"
#include "tukey/error.hpp"

using namespace tukey;

namespace {

WeightedPointSet square3() { return square_atoms_3d(); }

}  // namespace

TEST_SUITE("core_model") {

TEST_CASE("points and directions validate their input") {
  CHECK_THROWS_AS(Point({1.0, std::nan("")}), InvalidArgument);
  CHECK_THROWS_AS(Direction::normalized(std::vector<double>{0.0, 0.0}), InvalidArgument);
  const auto v = Direction::normalized(std::vector<double>{3.0, 4.0});
  CHECK(v.is_normalized());
  CHECK(std::abs(std::hypot(v[0], v[1]) - 1.0) <= 1e-12);
}

TEST_CASE("weights must be nonnegative and sum to one") {
  CHECK_THROWS_AS(WeightedPointSet(1, {0.0, 1.0}, {0.7, 0.7}), InvalidArgument);
  CHECK_THROWS_AS(WeightedPointSet(1, {0.0, 1.0}, {1.5, -0.5}), InvalidArgument);
  CHECK_THROWS_AS(WeightedPointSet(2, {0.0, 1.0, 2.0}, {1.0}), InvalidArgument);
  CHECK_NOTHROW(WeightedPointSet(1, {0.0, 1.0}, {0.5, 0.5 + 1e-10}));
}

TEST_CASE("project_points on an axis") {
  const auto p = WeightedPointSet::uniform({Point{1.0, 0.0}, Point{-1.0, 0.0}});
  const auto proj = project_points(p, Direction::axis(2, 0));
  REQUIRE(proj.size() == 2);
  CHECK(proj[0] == std::pair(1.0, 0.5));
  CHECK(proj[1] == std::pair(-1.0, 0.5));
}

TEST_CASE("project_points on the square diagonal") {
  const auto proj = project_points(square3(), Direction::normalized(std::vector<double>{1.0, 1.0, 0.0}));
  std::vector<double> vals;
  for (auto [x, w] : proj) {
    CHECK(w == 0.25);
    vals.push_back(x);
  }
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(vals[1]) <= 1e-15);
  CHECK(std::abs(vals[2]) <= 1e-15);
  CHECK(vals[3] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("halfspace_mass closed and open") {
  const auto sq = square3();
  CHECK(halfspace_mass(sq, Direction::axis(3, 0), 0.0, true) == 0.5);
  CHECK(halfspace_mass(sq, Direction::axis(3, 2), 0.0, true) == 1.0);
  CHECK(halfspace_mass(sq, Direction::axis(3, 2), 0.0, false) == 0.0);
  CHECK(halfspace_mass(sq, Direction::axis(3, 1), -std::numeric_limits<double>::infinity(), true) == 1.0);
}

TEST_CASE("closed and complementary open halfspaces partition the mass") {
  SeededRng rng(11);
  const auto p = sample(NamedDistribution::gaussian(Point::zeros(3), 1.0), 200, rng);
  for (int k = 0; k < 50; ++k) {
    const auto v = Direction::normalized(rng.unit_vector(3));
    const double t = rng.uniform(-1.0, 1.0);
    const double a = halfspace_mass(p, v, t, true);
    const double b = halfspace_mass(p, v.negated(), -t, false);
    CHECK(std::abs(a + b - 1.0) <= 1e-9);
  }
}

TEST_CASE("sampling") {
  SUBCASE("single atom template") {
    SeededRng rng(1);
    const auto d = NamedDistribution::discrete_atoms(Point{0.0, 0.0}, WeightedPointSet::single(Point{0.0, 0.0}));
    const auto s = sample(d, 5, rng);
    REQUIRE(s.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(s.point_at(i) == Point{0.0, 0.0});
      CHECK(s.weight(i) == 0.2);
    }
  }
  SUBCASE("gaussian mean") {
    SeededRng rng(2024);
    const auto s = sample(NamedDistribution::gaussian(Point{1.0, -2.0, 3.0}, 1.0), 10000, rng);
    const auto c = s.centroid();
    CHECK(std::abs(c[0] - 1.0) <= 0.05);
    CHECK(std::abs(c[1] + 2.0) <= 0.05);
    CHECK(std::abs(c[2] - 3.0) <= 0.05);
  }
  SUBCASE("ball radius") {
    SeededRng rng(5);
    const auto s = sample(NamedDistribution::uniform_ball(Point::zeros(3), 2.0), 2000, rng);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto x = s.point(i);
      CHECK(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) <= 2.0);
    }
  }
  SUBCASE("determinism") {
    SeededRng a(77), b(77);
    const auto dist = NamedDistribution::gaussian(Point::zeros(2), 1.0);
    CHECK(sample(dist, 100, a) == sample(dist, 100, b));
  }
}

TEST_CASE("symmetry_check") {
  CHECK(symmetry_check(square3(), Point::zeros(3)));
  for (double z : {1.0, 10.0, 100.0}) {
    const auto tet = tetrahedron_atoms(z);
    CHECK_FALSE(symmetry_check(tet, Point::zeros(3)));
    CHECK_FALSE(symmetry_check(tet, tet.centroid()));
  }
  CHECK(symmetry_check(WeightedPointSet::single(Point{4.0, 5.0}), Point{4.0, 5.0}));
  CHECK_THROWS_AS(NamedDistribution::discrete_atoms(Point::zeros(3), tetrahedron_atoms(5.0)), InvalidArgument);
}

TEST_CASE("symmetric atoms have mirror-equal tails") {
  const auto sq = square3();
  SeededRng rng(3);
  for (int k = 0; k < 100; ++k) {
    const auto v = Direction::normalized(rng.unit_vector(3));
    const double t = rng.uniform(0.0, 2.0);
    CHECK(halfspace_mass(sq, v, t, false) == halfspace_mass(sq, v.negated(), t, false));
  }
}

TEST_CASE("merge, translate, medians") {
  const auto p = WeightedPointSet::uniform({Point{1.0}, Point{0.0}, Point{1.0}, Point{2.0}});
  const auto m = p.merged();
  REQUIRE(m.size() == 3);
  CHECK(m.point_at(1) == Point{1.0});
  CHECK(m.weight(1) == 0.5);
  const auto shifted = p.translated(std::vector<double>{10.0});
  CHECK(shifted.point_at(0) == Point{11.0});
  CHECK(p.coordinatewise_median() == Point{1.0});
  const auto [lo, hi] = weighted_median_interval(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 1, 1, 1});
  CHECK(lo == 2.0);
  CHECK(hi == 3.0);
}

TEST_CASE("rng streams") {
  SeededRng a(9);
  const auto c1 = a.split(1), c2 = a.split(2);
  SeededRng x = c1, y = c2;
  CHECK(x.next_u64() != y.next_u64());
  SeededRng z = a.split(1);
  SeededRng w = c1;
  CHECK(z.next_u64() == w.next_u64());
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

}  // TEST_SUITE
