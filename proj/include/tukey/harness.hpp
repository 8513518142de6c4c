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

#ifndef TUKEY_HARNESS_HPP_
#define TUKEY_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tukey/core_model.hpp"
#include "tukey/corruption.hpp"
#include "tukey/depth.hpp"
#include "tukey/metrics.hpp"

namespace tukey {

enum class Estimator { tukey, projection, cwise_median };

std::string_view to_string(Estimator estimator);
Estimator parse_estimator(std::string_view name);

struct ExperimentConfig {
  Estimator estimator = Estimator::tukey;
  NamedDistribution distribution = NamedDistribution::gaussian(Point::zeros(3), 1.0);
  AttackSpec attack;
  CorruptionMode mode = CorruptionMode::adaptive_samples;
  std::size_t n = 1000;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;

  DepthEngine engine = DepthEngine::automatic;
  std::size_t depth_budget = 2048;
  std::size_t max_pairs = 100000;
  std::size_t refine_steps = 64;
  std::size_t projection_budget = 2048;
  std::size_t projection_starts = 2;

  double c_vc = kDefaultCvc;
  double delta = 0.05;
  // Record wall-clock milliseconds; off by default so reports are reproducible.
  bool timing = false;
  std::size_t threads = 1;

  void validate() const;
};

struct ReportRow {
  std::int64_t trial = 0;
  std::string estimator;
  std::string attack;
  std::string mode;
  double eps = 0.0;
  double eps_tilde = 0.0;
  std::size_t n = 0;
  std::size_t d = 0;
  double error = 0.0;
  double score = 0.0;  // achieved depth or projection objective
  double bound = 0.0;  // may be +inf
  std::uint64_t seed = 0;
  double ms = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ExperimentReport {
  double c_vc = kDefaultCvc;
  double delta = 0.05;
  std::vector<ReportRow> rows;

  // Fixed schema: trial,estimator,attack,mode,eps,eps_tilde,n,d,error,score,bound,seed,ms
  // after a "# c_vc=...,delta=..." line.
  std::string to_csv() const;
  static ExperimentReport parse_csv(std::string_view text);

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

inline constexpr std::string_view kReportColumns =
    "trial,estimator,attack,mode,eps,eps_tilde,n,d,error,score,bound,seed,ms";

// Shortest round-trip decimal; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);
double parse_number(std::string_view text);

// One trial at level eps with n points; trial seeds come from (seed, stream).
ReportRow run_trial(const ExperimentConfig& config, double eps, std::size_t n,
                    std::int64_t trial, std::uint64_t stream);

// Every (eps, trial) pair in grid order.
ExperimentReport run_bias_sweep(const ExperimentConfig& config, const std::vector<double>& eps_grid);

// Named construction at each apex distance z. The attack level defaults to the
// construction's own (1/4 tetrahedron, 1/2 point mass, 1/3 ball) when zero.
// Tukey runs add a "tukey_certified" row per z: the exact depth of an
// adversarial far point next to the attack mass and its distance to the center.
ExperimentReport run_breakdown_sweep(const ExperimentConfig& config, AttackVariant construction,
                                     const std::vector<double>& z_grid);

// Fixed eps = config.attack.epsilon, every n in the grid.
ExperimentReport run_scaling(const ExperimentConfig& config, const std::vector<std::size_t>& n_grid);

struct ErrorSummary {
  std::string estimator;
  double eps;
  std::size_t n;
  std::size_t trials;
  double median_error;
  double max_error;
  double min_bound;
};

// Per (estimator, eps, n) group, in first-appearance order.
std::vector<ErrorSummary> summarize(const ExperimentReport& report);

// Default construction level for a breakdown sweep.
double construction_level(AttackVariant construction, std::size_t d);

}  // namespace tukey

#endif  // TUKEY_HARNESS_HPP_
