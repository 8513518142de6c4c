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

#include <cstdio>
#include <string>

#include "doctest.h"
#include "tukey/error.hpp"
#include "tukey/io.hpp"

using namespace tukey;

TEST_SUITE("io") {

TEST_CASE("point set CSV") {
  const auto p = WeightedPointSet::from_points({Point{1.5, -2.0}, Point{0.1, 3.0}}, {0.25, 0.75});
  const std::string csv = io::point_set_to_csv(p);
  CHECK(csv == "w,x1,x2\n0.25,1.5,-2\n0.75,0.1,3\n");
  CHECK(io::point_set_from_csv(csv) == p);
  CHECK(io::point_set_from_csv("w,x1\r\n0.5,1\r\n\r\n0.5,2\r\n").size() == 2);
  CHECK_THROWS_AS(io::point_set_from_csv("x,y\n1,2\n"), ConfigError);
  CHECK_THROWS_AS(io::point_set_from_csv("w,x1\n0.5,1,2\n"), ConfigError);
  CHECK_THROWS_AS(io::point_set_from_csv("w,x1\n0.7,1\n0.7,2\n"), ConfigError);
}

TEST_CASE("point set JSON") {
  const auto p = WeightedPointSet::from_points({Point{1.0, 2.0}, Point{3.0, 4.0}}, {0.5, 0.5});
  const auto j = io::to_json(p);
  CHECK(j["weights"].size() == 2);
  CHECK(j["points"][1][0] == 3.0);
  CHECK(io::point_set_from_json(j) == p);
  CHECK(io::point_set_from_json(io::parse_json(R"({"points": [[0], [1]]})")).weight(1) == 0.5);
  CHECK_THROWS_AS(io::point_set_from_json(io::parse_json(R"({"points": []})")), ConfigError);
}

TEST_CASE("files") {
  const std::string path = "io_test_points.json";
  const auto p = square_atoms_3d();
  io::save_point_set(path, p);
  CHECK(io::load_point_set(path) == p);
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::load_point_set("does/not/exist.csv"), ConfigError);
}

TEST_CASE("points from text") {
  CHECK(io::parse_point("-0.5, -0.5,75") == Point{-0.5, -0.5, 75.0});
  CHECK_THROWS_AS(io::parse_point("1,,2"), ConfigError);
  CHECK_THROWS_AS(io::parse_point(""), ConfigError);
}

TEST_CASE("attack spec JSON") {
  const auto spec = io::attack_from_json(
      io::parse_json(R"({"variant": "cluster", "epsilon": 0.1, "z": 20, "cluster_point": [1, 2, 3]})"));
  CHECK(spec.variant == AttackVariant::shift_cluster);
  CHECK(spec.epsilon == 0.1);
  CHECK(spec.z == 20.0);
  CHECK(*spec.cluster_point == Point{1, 2, 3});
  const auto back = io::attack_from_json(io::to_json(spec));
  CHECK(back.cluster_point == spec.cluster_point);
  CHECK_THROWS_AS(io::attack_from_json(io::parse_json(R"({"variant": "cluster", "epsilon": 2})")), ConfigError);
  CHECK_THROWS_AS(io::attack_from_json(io::parse_json(R"({"variant": "cluster", "eps": 0.1})")), ConfigError);
}

TEST_CASE("distribution and decay JSON") {
  for (const char* text : {R"({"kind": "gaussian", "center": [1, 2], "sigma": 2})",
                           R"({"kind": "ball", "d": 4, "radius": 3})", R"({"kind": "square"})",
                           R"({"kind": "atoms", "center": [0], "offsets": {"points": [[-1], [1]]}})"}) {
    const auto d = io::distribution_from_json(io::parse_json(text));
    const auto again = io::distribution_from_json(io::to_json(d));
    CHECK(again.kind() == d.kind());
    CHECK(again.center() == d.center());
    CHECK(again.scale() == d.scale());
  }
  const auto h = io::decay_from_json(io::parse_json(R"({"variant": "gaussian", "sigma": 1.0})"));
  CHECK(h.kind() == DecayProfile::Kind::gaussian);
  const auto pw = io::decay_from_json(io::parse_json(R"({"variant": "piecewise", "t": [0, 1], "h": [0.5, 0.1]})"));
  CHECK(pw.eval(2.0) == 0.1);
  CHECK(io::decay_from_json(io::to_json(pw)).eval(0.5) == 0.5);
  CHECK_THROWS_AS(io::decay_from_json(io::parse_json(R"({"variant": "piecewise", "t": [0], "h": []})")), ConfigError);
}

TEST_CASE("template family JSON") {
  const auto fam = io::family_from_json(io::parse_json(R"({"template": {"kind": "square"}, "box": [[-1, 1], [-1, 1], [-1, 9]]})"));
  CHECK(fam.dim() == 3);
  CHECK(fam.search_box[2].second == 9.0);
  CHECK_FALSE(io::to_json(fam).contains("decay"));
  const auto back = io::family_from_json(io::to_json(fam));
  CHECK(back.search_box == fam.search_box);
  CHECK(back.decay.eval(0.5) == fam.decay.eval(0.5));
}

TEST_CASE("experiment config JSON") {
  ExperimentConfig c;
  c.estimator = Estimator::projection;
  c.n = 123;
  c.seed = 99;
  c.attack.variant = AttackVariant::shift_cluster;
  c.attack.epsilon = 0.2;
  const auto back = io::config_from_json(io::to_json(c));
  CHECK(back.estimator == Estimator::projection);
  CHECK(back.n == 123);
  CHECK(back.seed == 99);
  CHECK(back.attack.epsilon == 0.2);
  CHECK_THROWS_AS(io::config_from_json(io::parse_json(R"({"trails": 3})")), ConfigError);
  CHECK_NOTHROW(io::config_from_json(io::parse_json(R"({"eps_grid": [0.1]})")));
}

TEST_CASE("result JSON shapes") {
  DepthResult d{0.25, Direction::axis(2, 1), DepthEngine::sweep2d};
  const auto dj = io::to_json(d);
  CHECK(dj["value"] == 0.25);
  CHECK(dj["engine"] == "sweep2d");
  CHECK(dj["witness"].size() == 2);
  MedianResult m{Point{1, 2}, 0.5, 7, MedianMethod::candidates, DepthEngine::oracle};
  const auto mj = io::to_json(m);
  CHECK(mj["point"].size() == 2);
  CHECK(mj["achieved_depth"] == 0.5);
  CHECK(mj["engine"] == "oracle");
  CHECK(mj["candidate_count"] == 7);
  BoundReport b{BoundModel::tv, 3, 0.25, std::numeric_limits<double>::infinity()};
  CHECK(io::to_json(b)["value"] == "inf");
}

TEST_CASE("report JSON round-trip") {
  ExperimentReport r;
  r.rows.push_back({2, "tukey", "shift_cluster", "adaptive_samples", 0.1, 0.15, 100, 3, 0.3, 0.4,
                    std::numeric_limits<double>::infinity(), 12345678901234567890ULL, 0.0});
  CHECK(io::report_from_json(io::to_json(r)) == r);
}

}  // TEST_SUITE
