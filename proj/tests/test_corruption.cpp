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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "tukey/corruption.hpp"
#include "tukey/depth.hpp"
#include "tukey/error.hpp"
#include "tukey/median.hpp"
#include "tukey/metrics.hpp"

using namespace tukey;

namespace {

std::vector<std::pair<std::vector<double>, double>> atoms_of(const WeightedPointSet& p) {
  std::vector<std::pair<std::vector<double>, double>> out;
  for (std::size_t i = 0; i < p.size(); ++i) out.emplace_back(p.point_at(i).vec(), p.weight(i));
  return out;
}

double mass_at(const WeightedPointSet& p, const Point& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.point_at(i) == x) m += p.weight(i);
  return m;
}

// Uniform point in the tetrahedron via sorted-uniform barycentrics.
Point interior_point(SeededRng& rng, double z) {
  const double v[4][3] = {{-1, -1, 0}, {-1, 1, 0}, {1, -1, 0}, {-0.5, -0.5, z}};
  double e[4];
  double s = 0.0;
  for (auto& x : e) s += (x = -std::log(rng.uniform(1e-12, 1.0)));
  std::vector<double> c(3, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) c[j] += e[i] / s * v[i][j];
  return Point(c);
}

}  // namespace

TEST_SUITE("corruption") {

TEST_CASE("additive mixtures") {
  const auto p0 = WeightedPointSet::single(Point{0.0});
  const auto p1 = WeightedPointSet::single(Point{1.0});
  CHECK(additive_corrupt(p0, 0.0, p1).merged() == p0);
  const auto mix = additive_corrupt(p0, 1.0 / 3.0, p1);
  CHECK(mass_at(mix, Point{0.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(mass_at(mix, Point{1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("additive output stays within eps in total variation") {
  SeededRng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = sample(NamedDistribution::gaussian(Point::zeros(2), 1.0), 8, rng);
    const auto r = sample(NamedDistribution::gaussian(Point{5.0, 5.0}, 1.0), 3, rng);
    const double eps = rng.uniform(0.0, 0.9);
    const auto q = additive_corrupt(p, eps, r);
    CHECK(tv_distance(p, q) <= eps + 1e-12);
    CHECK(oracle::tv(atoms_of(p), atoms_of(q)) == doctest::Approx(tv_distance(p, q)).epsilon(1e-12));
  }
}

TEST_CASE("ball plus a far third") {
  SeededRng rng(42);
  const auto ball = sample(NamedDistribution::uniform_ball(Point::zeros(3), 1.0), 5000, rng);
  const Point far{100.0 / std::sqrt(3.0), 100.0 / std::sqrt(3.0), 100.0 / std::sqrt(3.0)};
  const auto p = additive_corrupt(ball, 1.0 / 3.0, WeightedPointSet::single(far));
  SeededRng r(43);
  const double v = depth_sampled(p, far, 2048, r).value;
  CHECK(v >= 0.31);
  CHECK(v <= 0.35);
}

TEST_CASE("total variation moves") {
  const auto sq = square_atoms_3d();
  std::size_t top = 0;
  for (std::size_t i = 0; i < sq.size(); ++i)
    if (sq.point_at(i) == Point{1, 1, 0}) top = i;
  const auto moved = tv_corrupt(sq, {{top, 0.25}}, {Atom{Point{-0.5, -0.5, 7.0}, 0.25}});
  CHECK(moved.eps == 0.25);
  CHECK(moved.dist == tetrahedron_atoms(7.0).merged());

  const auto none = tv_corrupt(sq, {}, {});
  CHECK(none.eps == 0.0);
  CHECK(none.dist == sq.merged());

  std::size_t other = top == 0 ? 1 : 0;
  const auto split = tv_corrupt(sq, {{top, 0.2}, {other, 0.1}}, {Atom{Point{0, 0, 50}, 0.3}});
  CHECK(split.eps == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(oracle::tv(atoms_of(sq), atoms_of(split.dist)) == doctest::Approx(0.3).epsilon(1e-12));

  CHECK_THROWS_AS(tv_corrupt(sq, {{top, 0.3}}, {Atom{Point{0, 0, 1}, 0.3}}), InvalidArgument);
  CHECK_THROWS_AS(tv_corrupt(sq, {{top, 0.1}}, {Atom{Point{0, 0, 1}, 0.2}}), InvalidArgument);
}

TEST_CASE("tetrahedron construction") {
  const auto pair1 = attack_tetrahedron(1.0);
  CHECK(tv_distance(pair1.p_star, pair1.p) == 0.25);
  for (double z : {1.0, 10.0, 100.0}) {
    const auto pair = attack_tetrahedron(z);
    CHECK(symmetry_check(pair.p_star, Point::zeros(3)));
    CHECK_FALSE(symmetry_check(pair.p, pair.p.centroid()));
  }
  const auto p = attack_tetrahedron(100.0).p;
  CHECK(depth_oracle(p, Point{-0.5, -0.5, 75.0}).value == 0.25);
}

TEST_CASE("tetrahedron depth is flat inside and zero outside") {
  SeededRng rng(44);
  for (double z : {10.0, 100.0, 1000.0}) {
    const auto p = attack_tetrahedron(z).p;
    for (int k = 0; k < 20; ++k) {
      CHECK(depth_oracle(p, interior_point(rng, z)).value == 0.25);
      const Point out{rng.uniform(-3, 3), rng.uniform(-3, 3), -rng.uniform(0.01, 3.0)};
      CHECK(depth_oracle(p, out).value == 0.0);
    }
  }
}

TEST_CASE("point mass on the line") {
  const auto p0 = WeightedPointSet::single(Point{0.0});
  const auto p = attack_pointmass_1d(p0, 10.0);
  CHECK(mass_at(p, Point{0.0}) == 0.5);
  CHECK(mass_at(p, Point{10.0}) == 0.5);
  for (double x = 0.0; x <= 10.0; x += 0.5) CHECK(depth_1d(p, Point{x}).value == 0.5);
  CHECK(attack_pointmass_1d(p0, 0.0).merged() == p0);
  const auto two = WeightedPointSet::uniform({Point{-1.0}, Point{1.0}});
  CHECK(median_1d(attack_pointmass_1d(two, 1e6)).point[0] >= 1.0);
}

TEST_CASE("adaptive replacement") {
  SeededRng rng(45);
  const auto s = sample(NamedDistribution::gaussian(Point::zeros(3), 1.0), 1000, rng);
  const auto far = [](SeededRng&) { return Point{50.0, 0.0, 0.0}; };
  SUBCASE("eps zero leaves samples alone") {
    SeededRng r(1);
    const auto out = adaptive_corrupt_samples(s, 0.0, far, r);
    CHECK(out.replaced == 0);
    CHECK(out.samples == s);
  }
  SUBCASE("binomial replacement count and untouched atoms") {
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      SeededRng r(seed);
      const auto out = adaptive_corrupt_samples(s, 0.1, far, r);
      inside += out.replaced >= 70 && out.replaced <= 130;
      std::size_t changed = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (out.samples.point_at(i) == s.point_at(i)) continue;
        ++changed;
        CHECK(out.samples.point_at(i) == Point{50.0, 0.0, 0.0});
      }
      CHECK(changed == out.replaced);
      CHECK(tv_distance(s, out.samples) == doctest::Approx(double(out.replaced) / 1000.0).epsilon(1e-9));
    }
    CHECK(inside >= 99);
  }
}

TEST_CASE("oblivious pipeline") {
  const auto gauss = NamedDistribution::gaussian(Point::zeros(3), 1.0);
  SUBCASE("identity is plain sampling") {
    SeededRng a(3), b(3);
    const auto s = oblivious_pipeline(gauss, [](const NamedDistribution& d) { return Population::of(d); }, 50, a);
    CHECK(s == sample(gauss, 50, b));
  }
  SUBCASE("additive third at a far point") {
    AttackSpec spec{AttackVariant::ball_additive, 1.0 / 3.0, 100.0, std::nullopt};
    SeededRng r(4);
    const auto s = oblivious_pipeline(gauss, [&](const NamedDistribution& d) { return corrupt_population(d, spec); },
                                      3000, r);
    const double f = mass_at(s, attack_point(spec, gauss.center()));
    CHECK(f >= 0.30);
    CHECK(f <= 0.37);
  }
  SUBCASE("tetrahedron move") {
    const auto sq = NamedDistribution::discrete_atoms(Point::zeros(3), square_atoms_3d());
    AttackSpec spec{AttackVariant::tetrahedron_tv, 0.25, 20.0, std::nullopt};
    SeededRng r(5);
    const auto s = oblivious_pipeline(sq, [&](const NamedDistribution& d) { return corrupt_population(d, spec); },
                                      4000, r);
    const double f = mass_at(s, Point{-0.5, -0.5, 20.0});
    CHECK(f >= 0.23);
    CHECK(f <= 0.27);
  }
}

TEST_CASE("attack specs") {
  CHECK(parse_attack_variant("tetrahedron") == AttackVariant::tetrahedron_tv);
  CHECK(parse_attack_variant("pointmass") == AttackVariant::pointmass_1d);
  CHECK(parse_attack_variant("ball") == AttackVariant::ball_additive);
  CHECK(parse_attack_variant("cluster") == AttackVariant::shift_cluster);
  CHECK_THROWS(parse_attack_variant("nope"));
  CHECK_THROWS_AS((AttackSpec{AttackVariant::shift_cluster, 1.0, 10.0, std::nullopt}.validate()), InvalidArgument);
  CHECK_THROWS_AS((AttackSpec{AttackVariant::shift_cluster, 0.1, -1.0, std::nullopt}.validate()), InvalidArgument);
  CHECK(parse_corruption_mode("adaptive") == CorruptionMode::adaptive_samples);
  CHECK(parse_corruption_mode("tv") == CorruptionMode::tv_population);
}

TEST_CASE("tetrahedron population beyond one quarter") {
  const auto sq = NamedDistribution::discrete_atoms(Point::zeros(3), square_atoms_3d());
  const auto pop = corrupt_population(sq, {AttackVariant::tetrahedron_tv, 0.3, 50.0, std::nullopt});
  const auto p = to_point_set(pop);
  CHECK(tv_distance(sq.atoms(), p) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(mass_at(p, Point{-0.5, -0.5, 50.0}) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(mass_at(p, Point{1, 1, 0}) == 0.0);
}

}  // TEST_SUITE
