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

// Exercises the shared library through its C header only.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "tukey/tukey.h"

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  tukey_string_free(s);
  return out;
}

}  // namespace

TEST_SUITE("c_api") {

TEST_CASE("point sets and depth") {
  const double coords[] = {1, 1, 1, -1, -1, 1, -1, -1};
  tukey_pointset* p = nullptr;
  REQUIRE(tukey_pointset_create(2, 4, coords, nullptr, &p) == TUKEY_OK);
  CHECK(tukey_pointset_size(p) == 4);
  CHECK(tukey_pointset_dim(p) == 2);
  const double mu[] = {0, 0};
  double value = -1.0, witness[2];
  CHECK(tukey_depth(p, mu, nullptr, &value, witness) == TUKEY_OK);
  CHECK(value == 0.5);
  CHECK(std::hypot(witness[0], witness[1]) == doctest::Approx(1.0));
  char* json = nullptr;
  CHECK(tukey_depth_json(p, mu, R"({"engine": "oracle"})", &json) == TUKEY_OK);
  const std::string text = take(json);
  CHECK(text.find("\"engine\":\"oracle\"") != std::string::npos);
  CHECK(text.find("\"value\":0.5") != std::string::npos);
  std::vector<double> w(4);
  CHECK(tukey_pointset_get(p, nullptr, w.data()) == TUKEY_OK);
  CHECK(w[2] == 0.25);
  tukey_pointset_free(p);
}

TEST_CASE("errors carry status and message") {
  tukey_pointset* p = nullptr;
  const double coords[] = {0, 1};
  const double bad[] = {0.9, 0.9};
  CHECK(tukey_pointset_create(1, 2, coords, bad, &p) == TUKEY_ERR_INVALID_ARGUMENT);
  CHECK(std::string(tukey_last_error()).size() > 0);
  CHECK(p == nullptr);
  CHECK(tukey_pointset_load("missing-file.csv", &p) == TUKEY_ERR_CONFIG);
  double out = 0.0;
  CHECK(tukey_bound("tv", "nonsense", 3, 0.1, &out) != TUKEY_OK);
  CHECK(tukey_bound(nullptr, "gaussian:1", 3, 0.1, &out) == TUKEY_ERR_INVALID_ARGUMENT);
  CHECK(std::string(tukey_status_name(TUKEY_ERR_GUARD)) == "guard_exceeded");
}

TEST_CASE("bounds and levels") {
  double v = 0.0;
  CHECK(tukey_bound("tv", "gaussian:1.0", 3, 0.25, &v) == TUKEY_OK);
  CHECK(std::isinf(v));
  CHECK(tukey_bound("projection", "gaussian:1.0", 3, 0.1, &v) == TUKEY_OK);
  CHECK(v == doctest::Approx(0.50669).epsilon(1e-4));
  CHECK(tukey_epsilon_tilde(0.1, 1000, 3, 0.05, 0.5, &v) == TUKEY_OK);
  CHECK(v == doctest::Approx(0.1678).epsilon(1e-3));
}

TEST_CASE("attack, median, estimate") {
  tukey_pointset* p = nullptr;
  REQUIRE(tukey_attack(R"({"attack": {"variant": "tetrahedron", "z": 100}})", &p) == TUKEY_OK);
  CHECK(tukey_pointset_size(p) == 4);
  const double inner[] = {-0.5, -0.5, 75};
  double value = 0.0;
  CHECK(tukey_depth(p, inner, R"({"engine": "oracle"})", &value, nullptr) == TUKEY_OK);
  CHECK(value == 0.25);
  char* out = nullptr;
  CHECK(tukey_median_json(p, nullptr, &out) == TUKEY_OK);
  CHECK(take(out).find("\"achieved_depth\":0.25") != std::string::npos);
  CHECK(tukey_estimate_json(p, R"({"template": {"kind": "square"}})", &out) == TUKEY_OK);
  CHECK(take(out).find("\"mu_hat\":[0.0,0.0,0.0]") != std::string::npos);
  CHECK(tukey_estimate_json(p, R"({"template": {"kind": "gaussian", "d": 2}})", &out) == TUKEY_ERR_DIMENSION);

  tukey_pointset* q = nullptr;
  REQUIRE(tukey_attack(R"({"distribution": {"kind": "square"}})", &q) == TUKEY_OK);
  double tv = 0.0;
  CHECK(tukey_tv_distance(p, q, &tv) == TUKEY_OK);
  CHECK(tv == 0.25);
  CHECK(tukey_halfspace_metric(p, q, "sampled", 4096, 1, &tv) == TUKEY_OK);
  CHECK(tv <= 0.25);
  CHECK(tukey_halfspace_metric(p, q, "exact", 0, 0, &tv) == TUKEY_ERR_INVALID_ARGUMENT);
  tukey_pointset_free(q);
  tukey_pointset_free(p);
}

TEST_CASE("sweeps and reports") {
  tukey_report* r = nullptr;
  REQUIRE(tukey_sweep_breakdown(R"({"construction": "tetrahedron", "z_grid": [10, 100]})", &r) == TUKEY_OK);
  CHECK(tukey_report_rows(r) == 4);
  tukey_row row;
  REQUIRE(tukey_report_row(r, 1, &row) == TUKEY_OK);
  CHECK(std::string(row.estimator) == "tukey_certified");
  CHECK(row.score == 0.25);
  CHECK(row.error >= 7.5);
  CHECK(tukey_report_row(r, 9, &row) == TUKEY_ERR_INVALID_ARGUMENT);

  char* csv = nullptr;
  REQUIRE(tukey_report_to_csv(r, &csv) == TUKEY_OK);
  const std::string text = take(csv);
  tukey_report* back = nullptr;
  REQUIRE(tukey_report_parse_csv(text.c_str(), &back) == TUKEY_OK);
  REQUIRE(tukey_report_to_csv(back, &csv) == TUKEY_OK);
  CHECK(take(csv) == text);
  CHECK(tukey_report_write(r, "c_api_report.json", "json") == TUKEY_OK);
  std::remove("c_api_report.json");
  CHECK(tukey_report_write(r, "c_api_report.txt", "yaml") == TUKEY_ERR_CONFIG);
  tukey_report_free(back);
  tukey_report_free(r);

  REQUIRE(tukey_sweep_bias(R"({"n": 200, "trials": 2, "eps_grid": [0, 0.1],
                               "attack": {"variant": "cluster", "z": 10}})", &r) == TUKEY_OK);
  CHECK(tukey_report_rows(r) == 4);
  tukey_report_free(r);
  CHECK(tukey_sweep_scaling(R"({"estimator": "cwise_median", "n_grid": [10, 20]})", &r) == TUKEY_OK);
  CHECK(tukey_report_rows(r) == 2);
  tukey_report_free(r);
  CHECK(tukey_sweep_bias(R"({"trials": 0})", &r) == TUKEY_ERR_CONFIG);
  CHECK(tukey_sweep_bias("{not json", &r) == TUKEY_ERR_CONFIG);
}

TEST_CASE("version") { CHECK(std::string(tukey_version()) == "0.1.0"); }

}  // TEST_SUITE
