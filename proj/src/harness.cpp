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

#include "tukey/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "tukey/error.hpp"
#include "tukey/median.hpp"
#include "tukey/projection.hpp"

namespace tukey {

std::string_view to_string(Estimator estimator) {
  switch (estimator) {
    case Estimator::tukey: return "tukey";
    case Estimator::projection: return "projection";
    case Estimator::cwise_median: return "cwise_median";
  }
  return "unknown";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "tukey") return Estimator::tukey;
  if (name == "projection") return Estimator::projection;
  if (name == "cwise_median") return Estimator::cwise_median;
  throw ConfigError("unknown estimator '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (n == 0) throw ConfigError("n must be >= 1");
  if (trials == 0) throw ConfigError("trials must be >= 1");
  if (depth_budget == 0) throw ConfigError("depth_budget must be >= 1");
  if (projection_budget == 0) throw ConfigError("projection_budget must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(c_vc >= 0.0)) throw ConfigError("c_vc must be >= 0");
  try {
    attack.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_number(std::string_view text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("bad number '" + std::string(text) + "'");
  return v;
}

namespace {

template <typename Int>
Int parse_int(std::string_view text) {
  Int v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("bad integer '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string ExperimentReport::to_csv() const {
  std::string out = "# c_vc=" + format_number(c_vc) + ",delta=" + format_number(delta) + "\n";
  out += kReportColumns;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.trial) + ',' + r.estimator + ',' + r.attack + ',' + r.mode + ',' +
           format_number(r.eps) + ',' + format_number(r.eps_tilde) + ',' + std::to_string(r.n) +
           ',' + std::to_string(r.d) + ',' + format_number(r.error) + ',' +
           format_number(r.score) + ',' + format_number(r.bound) + ',' + std::to_string(r.seed) +
           ',' + format_number(r.ms) + '\n';
  }
  return out;
}

ExperimentReport ExperimentReport::parse_csv(std::string_view text) {
  ExperimentReport report;
  bool header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      for (auto kv : split(line, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = kv.substr(0, eq);
        const auto value = kv.substr(eq + 1);
        if (key == "c_vc") report.c_vc = parse_number(value);
        if (key == "delta") report.delta = parse_number(value);
      }
      continue;
    }
    if (!header) {
      if (line != kReportColumns) throw ConfigError("unexpected report header");
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 13) throw ConfigError("report line " + std::to_string(line_no) + " has " +
                                          std::to_string(f.size()) + " fields");
    ReportRow r;
    r.trial = parse_int<std::int64_t>(f[0]);
    r.estimator = std::string(f[1]);
    r.attack = std::string(f[2]);
    r.mode = std::string(f[3]);
    r.eps = parse_number(f[4]);
    r.eps_tilde = parse_number(f[5]);
    r.n = parse_int<std::size_t>(f[6]);
    r.d = parse_int<std::size_t>(f[7]);
    r.error = parse_number(f[8]);
    r.score = parse_number(f[9]);
    r.bound = parse_number(f[10]);
    r.seed = parse_int<std::uint64_t>(f[11]);
    r.ms = parse_number(f[12]);
    report.rows.push_back(std::move(r));
  }
  if (!header) throw ConfigError("report has no header line");
  return report;
}

double construction_level(AttackVariant construction, std::size_t d) {
  switch (construction) {
    case AttackVariant::tetrahedron_tv: return 0.25;
    case AttackVariant::pointmass_1d: return 0.5;
    case AttackVariant::ball_additive:
    case AttackVariant::shift_cluster: return d == 1 ? 0.5 : 1.0 / 3.0;
    case AttackVariant::none: return 0.0;
  }
  return 0.0;
}

namespace {

constexpr std::uint64_t kGridStride = 1000003;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct TrialData {
  WeightedPointSet data;
  bool exact;  // the corrupted population itself, not a sample
};

TrialData build_data(const ExperimentConfig& config, const AttackSpec& spec, CorruptionMode mode,
                     std::size_t n, SeededRng& rng) {
  const auto& dist = config.distribution;
  SeededRng draw = rng.split(1);
  if (mode == CorruptionMode::adaptive_samples) {
    auto clean = sample(dist, n, draw);
    if (spec.variant == AttackVariant::none || spec.epsilon == 0.0) return {std::move(clean), false};
    const Point far = attack_point(spec, dist.center());
    SeededRng adv = rng.split(2);
    auto hit = adaptive_corrupt_samples(clean, spec.epsilon, [&](SeededRng&) { return far; }, adv);
    return {std::move(hit.samples), false};
  }
  const Population pop = corrupt_population(dist, spec);
  const bool population = mode == CorruptionMode::additive_population ||
                          mode == CorruptionMode::tv_population;
  if (population && !pop.base) return {to_point_set(pop), true};
  return {sample(pop, n, draw), false};
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

double safe_bound(BoundModel model, const DecayProfile& h, double eps, std::size_t d) {
  if (!(eps < 1.0)) return kInf;
  return bias_bound(model, h, eps, d).value;
}

struct Estimate {
  Point point;
  double score;
  double bound;
};

MedianOptions median_options(const ExperimentConfig& config, std::uint64_t seed) {
  MedianOptions mo;
  mo.depth.engine = config.engine;
  mo.depth.budget = config.depth_budget;
  mo.depth.seed = seed;
  mo.max_pairs = config.max_pairs;
  mo.seed = seed;
  return mo;
}

Estimate estimate(const ExperimentConfig& config, CorruptionMode mode, const WeightedPointSet& data,
                  double eps_tilde, std::uint64_t seed, SeededRng& rng) {
  const auto& dist = config.distribution;
  const std::size_t d = dist.dim();
  const DecayProfile decay = DecayProfile::of(dist);
  switch (config.estimator) {
    case Estimator::tukey: {
      auto r = tukey_median(data, median_options(config, seed), config.refine_steps);
      const auto model = mode == CorruptionMode::additive_population ? BoundModel::additive
                                                                     : BoundModel::tv;
      return {std::move(r.point), r.achieved_depth, safe_bound(model, decay, eps_tilde, d)};
    }
    case Estimator::projection: {
      const double margin = dist.kind() == DistributionKind::discrete_atoms ? 1.0 : dist.scale();
      auto family = TemplateFamily::make(dist, bounding_box(data, margin));
      ProjectionConfig pc;
      pc.budget = config.projection_budget;
      pc.random_starts = config.projection_starts;
      pc.steps = config.refine_steps;
      // The Tukey start comes from the candidate search only; refinement is
      // left to the projection's own pattern search.
      pc.tukey_hint = median_candidates(data, median_options(config, seed)).point;
      SeededRng prng = rng.split(3);
      auto r = project_estimate(data, family, pc, prng);
      return {std::move(r.mu_hat), r.objective,
              safe_bound(BoundModel::projection, decay, eps_tilde, d)};
    }
    case Estimator::cwise_median:
      return {data.coordinatewise_median(), 0.0, kInf};
  }
  throw InvalidArgument("unknown estimator");
}

double tilde_for(const ExperimentConfig& config, double eps, std::size_t n, bool exact) {
  if (exact) return eps;
  return epsilon_tilde(eps, n, config.distribution.dim(), config.delta, config.c_vc);
}

ReportRow base_row(const ExperimentConfig& config, const AttackSpec& spec, CorruptionMode mode,
                   std::int64_t trial, double eps, std::size_t d) {
  ReportRow row;
  row.trial = trial;
  row.estimator = std::string(to_string(config.estimator));
  row.attack = std::string(to_string(spec.variant));
  row.mode = std::string(to_string(mode));
  row.eps = eps;
  row.d = d;
  return row;
}

ReportRow trial_row(const ExperimentConfig& config, const AttackSpec& spec, CorruptionMode mode,
                    std::size_t n, std::int64_t trial, std::uint64_t stream,
                    TrialData* keep = nullptr, double* bound_out = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = mix_seed(config.seed, stream);
  SeededRng rng(seed);
  auto td = build_data(config, spec, mode, n, rng);
  const std::size_t d = config.distribution.dim();
  ReportRow row = base_row(config, spec, mode, trial, spec.epsilon, d);
  row.n = td.exact ? td.data.size() : n;
  row.eps_tilde = tilde_for(config, spec.epsilon, n, td.exact);
  row.seed = seed;
  const auto est = estimate(config, mode, td.data, row.eps_tilde, seed, rng);
  row.error = distance(est.point, config.distribution.center());
  row.score = est.score;
  row.bound = est.bound;
  if (config.timing)
    row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (bound_out) *bound_out = est.bound;
  if (keep) *keep = std::move(td);
  return row;
}

// Runs tasks on `threads` workers; results land in task order.
void run_tasks(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

ExperimentReport grid_report(const ExperimentConfig& config, std::size_t cells,
                             const std::function<std::pair<double, std::size_t>(std::size_t)>& cell) {
  config.validate();
  ExperimentReport report;
  report.c_vc = config.c_vc;
  report.delta = config.delta;
  report.rows.resize(cells * config.trials);
  run_tasks(report.rows.size(), config.threads, [&](std::size_t i) {
    const std::size_t k = i / config.trials;
    const std::size_t t = i % config.trials;
    const auto [eps, n] = cell(k);
    AttackSpec spec = config.attack;
    spec.epsilon = eps;
    report.rows[i] = trial_row(config, spec, config.mode, n, static_cast<std::int64_t>(t),
                               k * kGridStride + t);
  });
  return report;
}

}  // namespace

ReportRow run_trial(const ExperimentConfig& config, double eps, std::size_t n, std::int64_t trial,
                    std::uint64_t stream) {
  config.validate();
  AttackSpec spec = config.attack;
  spec.epsilon = eps;
  spec.validate();
  return trial_row(config, spec, config.mode, n, trial, stream);
}

ExperimentReport run_bias_sweep(const ExperimentConfig& config, const std::vector<double>& eps_grid) {
  for (double e : eps_grid)
    if (!(e >= 0.0 && e < 1.0)) throw ConfigError("eps grid values must lie in [0, 1)");
  return grid_report(config, eps_grid.size(),
                     [&](std::size_t k) { return std::make_pair(eps_grid[k], config.n); });
}

ExperimentReport run_scaling(const ExperimentConfig& config, const std::vector<std::size_t>& n_grid) {
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    if (n_grid[k] == 0) throw ConfigError("n grid values must be >= 1");
    if (k > 0 && n_grid[k] <= n_grid[k - 1]) throw ConfigError("n grid must be ascending");
  }
  return grid_report(config, n_grid.size(),
                     [&](std::size_t k) { return std::make_pair(config.attack.epsilon, n_grid[k]); });
}

ExperimentReport run_breakdown_sweep(const ExperimentConfig& config, AttackVariant construction,
                                     const std::vector<double>& z_grid) {
  ExperimentConfig cfg = config;
  CorruptionMode mode = CorruptionMode::additive_population;
  switch (construction) {
    case AttackVariant::tetrahedron_tv:
      if (cfg.distribution.kind() != DistributionKind::discrete_atoms || cfg.distribution.dim() != 3)
        cfg.distribution = NamedDistribution::discrete_atoms(Point::zeros(3), square_atoms_3d());
      mode = CorruptionMode::tv_population;
      break;
    case AttackVariant::pointmass_1d:
      if (cfg.distribution.dim() != 1) throw ConfigError("pointmass construction needs d = 1");
      break;
    case AttackVariant::ball_additive:
    case AttackVariant::shift_cluster:
      break;
    case AttackVariant::none:
      throw ConfigError("breakdown sweep needs a named construction");
  }
  cfg.mode = mode;
  cfg.attack.variant = construction;
  if (cfg.attack.epsilon == 0.0) cfg.attack.epsilon = construction_level(construction, cfg.distribution.dim());
  for (double z : z_grid)
    if (!(z > 0.0) || !std::isfinite(z)) throw ConfigError("z grid values must be positive");
  cfg.validate();

  const bool certify = cfg.estimator == Estimator::tukey;
  const std::size_t per_cell = cfg.trials;
  ExperimentReport report;
  report.c_vc = cfg.c_vc;
  report.delta = cfg.delta;
  std::vector<std::vector<ReportRow>> cells(z_grid.size() * per_cell);
  run_tasks(cells.size(), cfg.threads, [&](std::size_t i) {
    const std::size_t k = i / per_cell;
    const std::size_t t = i % per_cell;
    AttackSpec spec = cfg.attack;
    spec.z = z_grid[k];
    TrialData td{WeightedPointSet::single(Point::zeros(cfg.distribution.dim())), false};
    double bound = kInf;
    auto row = trial_row(cfg, spec, mode, cfg.n, static_cast<std::int64_t>(t), k * kGridStride + t,
                         &td, &bound);
    cells[i].push_back(row);
    if (!certify) return;
    // Probe the attack mass itself and a point just inside the hull next to
    // it; report whichever is deeper (the interior one on ties).
    const Point far = attack_point(spec, cfg.distribution.center());
    const Point centroid = td.data.centroid();
    const double gap = distance(far, centroid);
    std::vector<double> inner(far.vec());
    if (gap > 0.0) {
      const double step = std::min(0.5, 0.05 * gap) / gap;
      for (std::size_t j = 0; j < inner.size(); ++j) inner[j] += step * (centroid[j] - far[j]);
    }
    DepthOptions dopts;
    dopts.engine = cfg.engine;
    dopts.budget = cfg.depth_budget;
    dopts.seed = row.seed;
    const Point probe_in(inner);
    const double d_in = depth(td.data, probe_in, dopts).value;
    const double d_far = depth(td.data, far, dopts).value;
    const bool use_in = d_in >= d_far;
    ReportRow c = row;
    c.estimator = "tukey_certified";
    c.score = use_in ? d_in : d_far;
    c.error = distance(use_in ? probe_in : far, cfg.distribution.center());
    c.bound = bound;
    c.ms = 0.0;
    cells[i].push_back(std::move(c));
  });
  for (auto& c : cells)
    for (auto& r : c) report.rows.push_back(std::move(r));
  return report;
}

std::vector<ErrorSummary> summarize(const ExperimentReport& report) {
  std::vector<ErrorSummary> out;
  std::map<std::tuple<std::string, double, std::size_t>, std::vector<std::size_t>> groups;
  std::vector<std::tuple<std::string, double, std::size_t>> order;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    auto key = std::make_tuple(r.estimator, r.eps, r.n);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(i);
  }
  for (const auto& key : order) {
    const auto& idx = groups[key];
    std::vector<double> errors;
    double min_bound = kInf;
    for (auto i : idx) {
      errors.push_back(report.rows[i].error);
      min_bound = std::min(min_bound, report.rows[i].bound);
    }
    std::sort(errors.begin(), errors.end());
    const std::size_t m = errors.size();
    const double median = m % 2 ? errors[m / 2] : 0.5 * (errors[m / 2 - 1] + errors[m / 2]);
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), m, median, errors.back(),
                   min_bound});
  }
  return out;
}

}  // namespace tukey
