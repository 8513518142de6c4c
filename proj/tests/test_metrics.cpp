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
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "tukey/corruption.hpp"
#include "tukey/error.hpp"
#include "tukey/metrics.hpp"

using namespace tukey;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Decay profiles with h(0) = 1/2 and a long tail, so only the level decides
// finiteness.
DecayProfile half_at_zero() { return DecayProfile::gaussian(1.0); }

WeightedPointSet random_atoms(SeededRng& rng, std::size_t d, std::size_t n) {
  std::vector<Point> pts;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(d);
    for (auto& x : c) x = double(rng.below(5)) - 2.0;
    pts.emplace_back(c);
    w.push_back(1.0 + double(rng.below(3)));
    total += w.back();
  }
  for (auto& x : w) x /= total;
  return WeightedPointSet::from_points(pts, w);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("total variation") {
  const auto a = WeightedPointSet::single(Point{0.0});
  const auto b = WeightedPointSet::single(Point{1.0});
  CHECK(tv_distance(a, a) == 0.0);
  CHECK(tv_distance(a, b) == 1.0);
  CHECK(tv_distance(square_atoms_3d(), tetrahedron_atoms(5.0)) == 0.25);
}

TEST_CASE("halfspace metric") {
  const auto a = WeightedPointSet::single(Point{0.0});
  const auto b = WeightedPointSet::single(Point{1.0});
  CHECK(halfspace_metric(a, b) == 1.0);
  CHECK(halfspace_metric(WeightedPointSet::uniform({Point{0.0}, Point{1.0}}), a) == 0.5);
  const double v = halfspace_metric(square_atoms_3d(), tetrahedron_atoms(5.0), HalfspaceMode::sampled, 10000, 1);
  CHECK(v >= 0.2);
  CHECK(v <= 0.25);
  CHECK_THROWS_AS(halfspace_metric(square_atoms_3d(), tetrahedron_atoms(5.0)), InvalidArgument);
}

TEST_CASE("halfspace metric on the line matches the threshold oracle") {
  SeededRng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_atoms(rng, 1, 1 + rng.below(6));
    const auto q = random_atoms(rng, 1, 1 + rng.below(6));
    std::vector<double> px, pw, qx, qw;
    for (std::size_t i = 0; i < p.size(); ++i) px.push_back(p.point(i)[0]), pw.push_back(p.weight(i));
    for (std::size_t i = 0; i < q.size(); ++i) qx.push_back(q.point(i)[0]), qw.push_back(q.weight(i));
    CHECK(halfspace_metric(p, q) == doctest::Approx(oracle::halfspace1d(px, pw, qx, qw)).epsilon(1e-12));
  }
}

TEST_CASE("halfspace metric is a pseudometric below total variation") {
  SeededRng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.below(2);
    const auto p = random_atoms(rng, d, 1 + rng.below(10));
    const auto q = random_atoms(rng, d, 1 + rng.below(10));
    const auto r = random_atoms(rng, d, 1 + rng.below(10));
    const double pq = halfspace_metric(p, q), qr = halfspace_metric(q, r), pr = halfspace_metric(p, r);
    CHECK(pq <= tv_distance(p, q) + 1e-12);
    CHECK(pq == doctest::Approx(halfspace_metric(q, p)).epsilon(1e-12));
    CHECK(pr <= pq + qr + 1e-12);
  }
}

TEST_CASE("gaussian decay") {
  const auto h = DecayProfile::gaussian(1.0);
  CHECK(h.eval(0.0) == 0.5);
  CHECK(h.eval(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
  CHECK(oracle::normal_sf(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
  CHECK(h.inverse(0.5) == 0.0);
  CHECK(h.inverse(0.3) == doctest::Approx(0.5244005127080407).epsilon(1e-9));
  CHECK(oracle::normal_quantile(0.7) == doctest::Approx(0.5244005127080407).epsilon(1e-9));
  CHECK(h.inverse(0.0) == kInf);
  for (double t = 0.0; t < 5.0; t += 0.25) CHECK(h.eval(t) >= h.eval(t + 0.25));
}

TEST_CASE("square decay profile") {
  const auto sq = DecayProfile::empirical(square_atoms_3d(), Point::zeros(3));
  CHECK(sq.exact());
  CHECK(sq.eval(0.5) == 0.5);
  CHECK(sq.eval(1.2) == 0.25);
  CHECK(sq.eval(1.5) == 0.0);
  CHECK(sq.inverse(0.2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sq.inverse(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  const auto parsed = DecayProfile::parse("square", 3);
  for (double t : {0.0, 0.5, 0.999, 1.0, 1.2, 1.41, 1.42, 3.0}) CHECK(parsed.eval(t) == sq.eval(t));
}

TEST_CASE("generalized inverse brackets the level") {
  const auto h = DecayProfile::piecewise({{0.0, 0.5}, {0.7, 0.4}, {1.3, 0.25}, {2.0, 0.1}, {4.0, 0.0}});
  for (double y : {0.05, 0.1, 0.2, 0.25, 0.3, 0.45, 0.5}) {
    const double x = h.inverse(y);
    REQUIRE(std::isfinite(x));
    for (double delta : {1e-6, 1e-3, 0.1}) {
      CHECK(h.eval(x + delta) < y);
      if (x > 0.0) CHECK(h.eval(std::max(x - delta, 0.0)) >= y);
    }
  }
  CHECK(h.inverse(0.6) == 0.0);
  CHECK(h.inverse(-0.1) == kInf);
}

TEST_CASE("additive bound") {
  const auto h = half_at_zero();
  CHECK(bias_bound_additive(h, 0.0, 3).value == 0.0);
  CHECK(std::isfinite(bias_bound_additive(h, 0.25, 3).value));
  CHECK(bias_bound_additive(h, 1.0 / 3.0, 3).value == kInf);
}

TEST_CASE("total variation bound") {
  const auto h = half_at_zero();
  CHECK(bias_bound_tv(h, 0.25, 3).value == kInf);
  CHECK(bias_bound_tv(h, 0.05, 3).value == doctest::Approx(0.2533471031357997).epsilon(1e-9));
  CHECK(oracle::normal_quantile(0.6) == doctest::Approx(0.2533471031357997).epsilon(1e-9));
  CHECK(std::isfinite(bias_bound_tv(h, 0.4, 1).value));
}

TEST_CASE("breakdown table") {
  const auto h = half_at_zero();
  for (int k = 1; k <= 49; ++k) {
    const double eps = k / 100.0;
    CHECK(std::isfinite(bias_bound_additive(h, eps, 1).value) == (eps < 0.5));
    CHECK(std::isfinite(bias_bound_additive(h, eps, 2).value) == (eps < 1.0 / 3.0));
    CHECK(std::isfinite(bias_bound_additive(h, eps, 3).value) == (eps < 1.0 / 3.0));
    CHECK(std::isfinite(bias_bound_tv(h, eps, 1).value) == (eps < 0.5));
    CHECK(std::isfinite(bias_bound_tv(h, eps, 2).value) == (eps < 1.0 / 3.0));
    CHECK(std::isfinite(bias_bound_tv(h, eps, 3).value) == (eps < 0.25));
  }
}

TEST_CASE("projection bound") {
  const auto h = half_at_zero();
  CHECK(bias_bound_projection(h, 0.1).value == doctest::Approx(2 * 0.2533471031357997).epsilon(1e-9));
  CHECK(bias_bound_projection(DecayProfile::parse("square", 3), 0.49).value ==
        doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(bias_bound_projection(h, 0.5).value == kInf);
}

TEST_CASE("effective level") {
  CHECK(epsilon_tilde(0.1, 1000, 3, 0.05, 0.5) == doctest::Approx(0.16776).epsilon(1e-4));
  const double oracle_value = std::pow(std::sqrt(0.1) + std::sqrt(std::log(20.0) / 2000.0), 2) +
                              0.5 * std::sqrt((4.0 + std::log(20.0)) / 1000.0);
  CHECK(epsilon_tilde(0.1, 1000, 3, 0.05, 0.5) == doctest::Approx(oracle_value).epsilon(1e-12));
  CHECK(epsilon_tilde(0.0, 1000000000, 3, 0.999999, 0.5) <= 1e-3);
  CHECK(epsilon_tilde(0.1, 100000000000ULL, 3, 0.05, 0.5) == doctest::Approx(0.1).epsilon(1e-3));
  CHECK(epsilon_tilde(0.9, 10, 3, 0.05, 0.5) == 1.0);
}

TEST_CASE("decay parsing") {
  CHECK(DecayProfile::parse("gaussian:2.0", 3).kind() == DecayProfile::Kind::gaussian);
  CHECK(DecayProfile::parse("ball:1", 3).eval(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(DecayProfile::parse("piecewise:0:0.5,1:0.2", 2).eval(1.5) == 0.2);
  CHECK_THROWS(DecayProfile::parse("mystery", 3));
  CHECK(parse_bound_model("tv") == BoundModel::tv);
}

TEST_CASE("ball decay matches its defining fraction") {
  // h(t) for the uniform unit ball in d = 3 is the cap volume (1 - t)^2 (2 + t) / 4.
  const auto h = DecayProfile::uniform_ball(1.0, 3);
  for (double t : {0.0, 0.2, 0.5, 0.9})
    CHECK(h.eval(t) == doctest::Approx((1 - t) * (1 - t) * (2 + t) / 4.0).epsilon(1e-10));
  CHECK(h.eval(1.0) == 0.0);
}

}  // TEST_SUITE
