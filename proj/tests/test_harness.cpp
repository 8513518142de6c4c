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
#include "tukey/error.hpp"
#include "tukey/harness.hpp"

using namespace tukey;

namespace {

std::vector<const ReportRow*> rows_named(const ExperimentReport& r, std::string_view estimator) {
  std::vector<const ReportRow*> out;
  for (const auto& row : r.rows)
    if (row.estimator == estimator) out.push_back(&row);
  return out;
}

ExperimentConfig cluster_config(Estimator e, std::size_t n) {
  ExperimentConfig c;
  c.estimator = e;
  c.n = n;
  c.attack.variant = AttackVariant::shift_cluster;
  c.attack.z = 20.0;
  return c;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("clean gaussian trials are accurate") {
  auto c = cluster_config(Estimator::tukey, 2000);
  c.trials = 5;
  const auto r = run_bias_sweep(c, {0.0});
  REQUIRE(r.rows.size() == 5);
  for (const auto& row : r.rows) {
    CHECK(row.error <= 0.2);
    CHECK(row.error >= 0.0);
    CHECK(row.error <= row.bound);
  }
}

TEST_CASE("projection rows respect their bounds") {
  auto c = cluster_config(Estimator::projection, 1000);
  c.trials = 2;
  const auto r = run_bias_sweep(c, {0.05, 0.1, 0.2});
  REQUIRE(r.rows.size() == 6);
  for (const auto& row : r.rows) CHECK(row.error <= row.bound);
}

TEST_CASE("empty grid gives an empty report") {
  CHECK(run_bias_sweep(ExperimentConfig{}, {}).rows.empty());
  CHECK_THROWS_AS(run_bias_sweep(ExperimentConfig{}, {1.0}), ConfigError);
}

TEST_CASE("tetrahedron breakdown") {
  ExperimentConfig c;
  const std::vector<double> zs{10.0, 100.0, 1000.0};
  const auto tukey_rows = run_breakdown_sweep(c, AttackVariant::tetrahedron_tv, zs);
  const auto certified = rows_named(tukey_rows, "tukey_certified");
  const auto plain = rows_named(tukey_rows, "tukey");
  REQUIRE(certified.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(certified[k]->score == 0.25);
    CHECK(plain[k]->score == 0.25);
    CHECK(certified[k]->error >= 0.75 * zs[k]);
    CHECK(certified[k]->bound == std::numeric_limits<double>::infinity());
  }

  c.estimator = Estimator::projection;
  const auto proj = run_breakdown_sweep(c, AttackVariant::tetrahedron_tv, zs);
  REQUIRE(proj.rows.size() == 3);
  for (const auto& row : proj.rows) CHECK(row.error <= 2.0 * std::sqrt(2.0));
}

TEST_CASE("point mass drags the one-dimensional median") {
  ExperimentConfig c;
  c.distribution = NamedDistribution::discrete_atoms(Point{0.0}, WeightedPointSet::uniform({Point{-1.0}, Point{1.0}}));
  const auto r = run_breakdown_sweep(c, AttackVariant::pointmass_1d, {1e2, 1e4, 1e6});
  const auto plain = rows_named(r, "tukey");
  REQUIRE(plain.size() == 3);
  CHECK(plain[0]->error < plain[1]->error);
  CHECK(plain[1]->error < plain[2]->error);
  CHECK(plain[2]->error >= 1e5);
  CHECK_THROWS_AS(run_breakdown_sweep(ExperimentConfig{}, AttackVariant::pointmass_1d, {10.0}), ConfigError);
}

TEST_CASE("scaling shapes") {
  auto c = cluster_config(Estimator::cwise_median, 100);
  const auto one = run_scaling(c, {300});
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].n == 300);
  CHECK_THROWS_AS(run_scaling(c, {300, 200}), ConfigError);
}

TEST_CASE("dimension-normalized scaling is flat") {
  std::vector<double> medians;
  for (std::size_t d : {2, 4, 8}) {
    auto c = cluster_config(Estimator::tukey, 100);
    c.distribution = NamedDistribution::gaussian(Point::zeros(d), 1.0);
    c.trials = 10;
    c.depth_budget = 512;
    c.refine_steps = 16;
    const auto r = run_scaling(c, {100 * d});
    std::vector<double> errs;
    for (const auto& row : r.rows) errs.push_back(row.error);
    std::sort(errs.begin(), errs.end());
    medians.push_back(0.5 * (errs[4] + errs[5]));
  }
  const auto [lo, hi] = std::minmax_element(medians.begin(), medians.end());
  CHECK(*hi <= 2.0 * *lo);
}

TEST_CASE("reports are reproducible and round-trip") {
  auto c = cluster_config(Estimator::tukey, 300);
  c.trials = 3;
  const auto a = run_bias_sweep(c, {0.0, 0.1});
  const auto b = run_bias_sweep(c, {0.0, 0.1});
  CHECK(a.to_csv() == b.to_csv());
  c.threads = 3;
  CHECK(run_bias_sweep(c, {0.0, 0.1}).to_csv() == a.to_csv());
  CHECK(ExperimentReport::parse_csv(a.to_csv()) == a);
  const std::string csv = a.to_csv();
  CHECK(csv.rfind("# c_vc=0.5,delta=0.05\n" + std::string(kReportColumns) + "\n", 0) == 0);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(parse_number("inf") == std::numeric_limits<double>::infinity());
  CHECK(parse_number(format_number(0.1 + 0.2)) == 0.1 + 0.2);
  CHECK_THROWS_AS(parse_number("1.0x"), ConfigError);
}

TEST_CASE("summaries group by estimator, level and size") {
  ExperimentReport r;
  for (double e : {1.0, 3.0, 2.0}) r.rows.push_back({0, "tukey", "none", "adaptive_samples", 0.1, 0.1, 10, 1, e, 0, 5.0, 0, 0});
  r.rows.push_back({0, "projection", "none", "adaptive_samples", 0.1, 0.1, 10, 1, 7.0, 0, 4.0, 0, 0});
  const auto s = summarize(r);
  REQUIRE(s.size() == 2);
  CHECK(s[0].estimator == "tukey");
  CHECK(s[0].median_error == 2.0);
  CHECK(s[0].max_error == 3.0);
  CHECK(s[1].trials == 1);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.trials = 1;
  c.n = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(parse_estimator("projection") == Estimator::projection);
  CHECK_THROWS_AS(parse_estimator("mean"), ConfigError);
}

}  // TEST_SUITE
