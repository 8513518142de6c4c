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

#include "tukey/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tukey/error.hpp"

namespace tukey::io {

namespace {

// JSON has no infinity; non-finite values travel as strings.
Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

double as_number(const Json& j, std::string_view what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_number(j.get<std::string>());
  throw ConfigError(std::string(what) + ": expected a number");
}

std::size_t as_count(const Json& j, std::string_view what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ConfigError(std::string(what) + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string as_string(const Json& j, std::string_view what) {
  if (!j.is_string()) throw ConfigError(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw ConfigError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing field '") + key + "'");
  return *it;
}

void check_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ConfigError(std::string(what) + ": unknown field '" + item.key() + "'");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

// Library errors raised while building objects from input are config errors.
template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string point_set_to_csv(const WeightedPointSet& p) {
  std::string out = "w";
  for (std::size_t j = 0; j < p.dim(); ++j) out += ",x" + std::to_string(j + 1);
  out += '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += format_number(p.weight(i));
    for (double x : p.point(i)) out += ',' + format_number(x);
    out += '\n';
  }
  return out;
}

WeightedPointSet point_set_from_csv(std::string_view text) {
  std::size_t dim = 0;
  bool header = false;
  std::vector<double> coords, weights;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto f = fields(line);
    if (!header) {
      if (f.size() < 2 || f[0] != "w") throw ConfigError("point set CSV must start with w,x1,...");
      for (std::size_t j = 1; j < f.size(); ++j)
        if (f[j] != "x" + std::to_string(j)) throw ConfigError("bad column name '" + std::string(f[j]) + "'");
      dim = f.size() - 1;
      header = true;
      continue;
    }
    if (f.size() != dim + 1)
      throw ConfigError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim + 1) + " fields");
    weights.push_back(parse_number(f[0]));
    for (std::size_t j = 1; j < f.size(); ++j) coords.push_back(parse_number(f[j]));
  }
  if (!header) throw ConfigError("point set CSV has no header");
  return guarded([&] { return WeightedPointSet(dim, std::move(coords), std::move(weights)); });
}

Json to_json(const WeightedPointSet& p) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) pts.push_back(std::vector<double>(p.point(i).begin(), p.point(i).end()));
  return Json{{"weights", std::vector<double>(p.weights().begin(), p.weights().end())}, {"points", pts}};
}

WeightedPointSet point_set_from_json(const Json& j) {
  return guarded([&] {
    check_keys(j, {"weights", "points"}, "point set");
    const auto& pts = require(j, "points");
    if (!pts.is_array() || pts.empty()) throw ConfigError("point set: 'points' must be a nonempty array");
    std::vector<Point> points;
    for (const auto& row : pts) points.push_back(point_from_json(row));
    auto it = j.find("weights");
    if (it == j.end()) return WeightedPointSet::uniform(points);
    return WeightedPointSet::from_points(points, it->get<std::vector<double>>());
  });
}

namespace {
bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}
}  // namespace

WeightedPointSet load_point_set(const std::string& path) {
  const std::string text = read_file(path);
  if (is_json_path(path)) return point_set_from_json(parse_json(text));
  return point_set_from_csv(text);
}

void save_point_set(const std::string& path, const WeightedPointSet& p) {
  write_file(path, is_json_path(path) ? to_json(p).dump(2) + "\n" : point_set_to_csv(p));
}

Json to_json(const Point& p) { return p.vec(); }

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("a point must be a nonempty array of numbers");
  std::vector<double> c;
  for (const auto& x : j) c.push_back(as_number(x, "coordinate"));
  return guarded([&] { return Point(std::move(c)); });
}

Point parse_point(std::string_view text) {
  std::vector<double> c;
  text = trim(text);
  if (text.empty()) throw ConfigError("empty point");
  for (auto f : fields(text)) c.push_back(parse_number(f));
  return guarded([&] { return Point(std::move(c)); });
}

Json to_json(const NamedDistribution& dist) {
  Json j{{"center", to_json(dist.center())}};
  switch (dist.kind()) {
    case DistributionKind::gaussian_isotropic:
      j["kind"] = "gaussian";
      j["sigma"] = dist.scale();
      break;
    case DistributionKind::uniform_ball:
      j["kind"] = "ball";
      j["radius"] = dist.scale();
      break;
    case DistributionKind::discrete_atoms:
      j["kind"] = "atoms";
      j["offsets"] = to_json(*dist.offsets());
      break;
  }
  return j;
}

NamedDistribution distribution_from_json(const Json& j) {
  return guarded([&] {
    const std::string kind = as_string(require(j, "kind"), "distribution kind");
    auto center = [&](std::size_t d_default) {
      auto it = j.find("center");
      if (it != j.end()) return point_from_json(*it);
      auto dit = j.find("d");
      const std::size_t d = dit != j.end() ? as_count(*dit, "d") : d_default;
      if (d == 0) throw ConfigError("distribution: d must be >= 1");
      return Point::zeros(d);
    };
    if (kind == "gaussian" || kind == "gaussian_isotropic") {
      check_keys(j, {"kind", "center", "d", "sigma"}, "distribution");
      auto it = j.find("sigma");
      return NamedDistribution::gaussian(center(3), it == j.end() ? 1.0 : as_number(*it, "sigma"));
    }
    if (kind == "ball" || kind == "uniform_ball") {
      check_keys(j, {"kind", "center", "d", "radius"}, "distribution");
      auto it = j.find("radius");
      return NamedDistribution::uniform_ball(center(3), it == j.end() ? 1.0 : as_number(*it, "radius"));
    }
    if (kind == "square") {
      check_keys(j, {"kind", "center"}, "distribution");
      return NamedDistribution::discrete_atoms(center(3), square_atoms_3d());
    }
    if (kind == "atoms" || kind == "discrete_atoms") {
      check_keys(j, {"kind", "center", "offsets"}, "distribution");
      auto offsets = point_set_from_json(require(j, "offsets"));
      return NamedDistribution::discrete_atoms(center(offsets.dim()), std::move(offsets));
    }
    throw ConfigError("unknown distribution kind '" + kind + "'");
  });
}

Json to_json(const AttackSpec& spec) {
  Json j{{"variant", std::string(to_string(spec.variant))}, {"epsilon", spec.epsilon}, {"z", spec.z}};
  if (spec.cluster_point) j["cluster_point"] = to_json(*spec.cluster_point);
  return j;
}

AttackSpec attack_from_json(const Json& j) {
  return guarded([&] {
    check_keys(j, {"variant", "epsilon", "z", "cluster_point"}, "attack");
    AttackSpec spec;
    if (auto it = j.find("variant"); it != j.end())
      spec.variant = parse_attack_variant(as_string(*it, "attack variant"));
    if (auto it = j.find("epsilon"); it != j.end()) spec.epsilon = as_number(*it, "epsilon");
    if (auto it = j.find("z"); it != j.end()) spec.z = as_number(*it, "z");
    if (auto it = j.find("cluster_point"); it != j.end() && !it->is_null())
      spec.cluster_point = point_from_json(*it);
    spec.validate();
    return spec;
  });
}

Json to_json(const DecayProfile& h) {
  switch (h.kind()) {
    case DecayProfile::Kind::gaussian:
      return Json{{"variant", "gaussian"}, {"sigma", h.scale()}};
    case DecayProfile::Kind::uniform_ball:
      return Json{{"variant", "ball"}, {"radius", h.scale()}, {"d", h.dim()}};
    case DecayProfile::Kind::piecewise: {
      std::vector<double> t, v;
      for (const auto& [a, b] : h.steps()) {
        t.push_back(a);
        v.push_back(b);
      }
      return Json{{"variant", "piecewise"}, {"t", t}, {"h", v}};
    }
    case DecayProfile::Kind::empirical:
      return Json{{"variant", "empirical"}, {"exact", h.exact()}, {"h0", h.at_zero()}};
  }
  return Json{};
}

DecayProfile decay_from_json(const Json& j) {
  return guarded([&] {
    const std::string v = as_string(require(j, "variant"), "decay variant");
    if (v == "gaussian") {
      check_keys(j, {"variant", "sigma"}, "decay");
      auto it = j.find("sigma");
      return DecayProfile::gaussian(it == j.end() ? 1.0 : as_number(*it, "sigma"));
    }
    if (v == "ball") {
      check_keys(j, {"variant", "radius", "d"}, "decay");
      auto it = j.find("radius");
      return DecayProfile::uniform_ball(it == j.end() ? 1.0 : as_number(*it, "radius"),
                                        as_count(require(j, "d"), "d"));
    }
    if (v == "square") {
      check_keys(j, {"variant"}, "decay");
      return DecayProfile::parse("square", 3);
    }
    if (v == "piecewise") {
      check_keys(j, {"variant", "t", "h"}, "decay");
      const auto& t = require(j, "t");
      const auto& h = require(j, "h");
      if (!t.is_array() || !h.is_array() || t.size() != h.size())
        throw ConfigError("decay: 't' and 'h' must be arrays of equal length");
      std::vector<std::pair<double, double>> steps;
      for (std::size_t i = 0; i < t.size(); ++i)
        steps.emplace_back(as_number(t[i], "t"), as_number(h[i], "h"));
      return DecayProfile::piecewise(std::move(steps));
    }
    throw ConfigError("unknown decay variant '" + v + "'");
  });
}

Json to_json(const TemplateFamily& family) {
  Json box = Json::array();
  for (const auto& [lo, hi] : family.search_box) box.push_back({lo, hi});
  Json j{{"template", to_json(family.templ)}, {"box", box}};
  // An empirical decay is rebuilt from the template on load.
  if (family.decay.kind() != DecayProfile::Kind::empirical) j["decay"] = to_json(family.decay);
  return j;
}

TemplateFamily family_from_json(const Json& j) {
  return guarded([&] {
    check_keys(j, {"template", "box", "decay"}, "template family");
    auto templ = distribution_from_json(require(j, "template"));
    std::vector<std::pair<double, double>> box;
    for (const auto& b : require(j, "box")) {
      if (!b.is_array() || b.size() != 2) throw ConfigError("box entries must be [lo, hi]");
      box.emplace_back(as_number(b[0], "box"), as_number(b[1], "box"));
    }
    auto family = TemplateFamily::make(std::move(templ), std::move(box));
    if (auto it = j.find("decay"); it != j.end()) {
      family.decay = decay_from_json(*it);
      family.validate();
    }
    return family;
  });
}

Json to_json(const ExperimentConfig& c) {
  Json j{{"estimator", std::string(to_string(c.estimator))},
         {"distribution", to_json(c.distribution)},
         {"attack", to_json(c.attack)},
         {"mode", std::string(to_string(c.mode))},
         {"n", c.n},
         {"trials", c.trials},
         {"seed", c.seed},
         {"output", c.output},
         {"engine", std::string(to_string(c.engine))},
         {"depth_budget", c.depth_budget},
         {"max_pairs", c.max_pairs},
         {"refine_steps", c.refine_steps},
         {"projection_budget", c.projection_budget},
         {"projection_starts", c.projection_starts},
         {"c_vc", c.c_vc},
         {"delta", c.delta},
         {"timing", c.timing},
         {"threads", c.threads}};
  return j;
}

ExperimentConfig config_from_json(const Json& j, ExperimentConfig c) {
  return guarded([&] {
    // Sweep grids may share the file; the sweep entry points read them.
    check_keys(j,
               {"estimator", "distribution", "attack", "mode", "n", "trials", "seed", "output", "engine",
                "depth_budget", "max_pairs", "refine_steps", "projection_budget", "projection_starts",
                "c_vc", "delta", "timing", "threads", "eps_grid", "z_grid", "n_grid", "construction"},
               "config");
    for (const auto& item : j.items()) {
      const std::string& k = item.key();
      const Json& v = item.value();
      if (k == "estimator") c.estimator = parse_estimator(as_string(v, k));
      else if (k == "distribution") c.distribution = distribution_from_json(v);
      else if (k == "attack") c.attack = attack_from_json(v);
      else if (k == "mode") c.mode = parse_corruption_mode(as_string(v, k));
      else if (k == "n") c.n = as_count(v, k);
      else if (k == "trials") c.trials = as_count(v, k);
      else if (k == "seed") c.seed = as_count(v, k);
      else if (k == "output") c.output = as_string(v, k);
      else if (k == "engine") c.engine = parse_depth_engine(as_string(v, k));
      else if (k == "depth_budget") c.depth_budget = as_count(v, k);
      else if (k == "max_pairs") c.max_pairs = as_count(v, k);
      else if (k == "refine_steps") c.refine_steps = as_count(v, k);
      else if (k == "projection_budget") c.projection_budget = as_count(v, k);
      else if (k == "projection_starts") c.projection_starts = as_count(v, k);
      else if (k == "c_vc") c.c_vc = as_number(v, k);
      else if (k == "delta") c.delta = as_number(v, k);
      else if (k == "timing") c.timing = v.get<bool>();
      else if (k == "threads") c.threads = as_count(v, k);
    }
    return c;
  });
}

Json to_json(const DepthResult& r) {
  return Json{{"value", r.value}, {"witness", r.witness.vec()}, {"engine", std::string(to_string(r.engine))}};
}

Json to_json(const MedianResult& r) {
  return Json{{"point", to_json(r.point)},
              {"achieved_depth", r.achieved_depth},
              {"engine", std::string(to_string(r.depth_engine))},
              {"candidate_count", r.candidate_count},
              {"method", std::string(to_string(r.method))}};
}

Json to_json(const ProjectionResult& r) {
  return Json{{"mu_hat", to_json(r.mu_hat)}, {"objective", r.objective}, {"evaluations", r.evaluations}};
}

Json to_json(const BoundReport& r) {
  return Json{{"model", std::string(to_string(r.model))}, {"d", r.d}, {"eps", r.eps}, {"value", number(r.value)}};
}

Json to_json(const ExperimentReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back(Json{{"trial", r.trial},
                        {"estimator", r.estimator},
                        {"attack", r.attack},
                        {"mode", r.mode},
                        {"eps", number(r.eps)},
                        {"eps_tilde", number(r.eps_tilde)},
                        {"n", r.n},
                        {"d", r.d},
                        {"error", number(r.error)},
                        {"score", number(r.score)},
                        {"bound", number(r.bound)},
                        {"seed", r.seed},
                        {"ms", number(r.ms)}});
  }
  return Json{{"c_vc", report.c_vc}, {"delta", report.delta}, {"rows", rows}};
}

ExperimentReport report_from_json(const Json& j) {
  return guarded([&] {
    check_keys(j, {"c_vc", "delta", "rows"}, "report");
    ExperimentReport report;
    report.c_vc = as_number(require(j, "c_vc"), "c_vc");
    report.delta = as_number(require(j, "delta"), "delta");
    for (const auto& x : require(j, "rows")) {
      ReportRow r;
      r.trial = require(x, "trial").get<std::int64_t>();
      r.estimator = as_string(require(x, "estimator"), "estimator");
      r.attack = as_string(require(x, "attack"), "attack");
      r.mode = as_string(require(x, "mode"), "mode");
      r.eps = as_number(require(x, "eps"), "eps");
      r.eps_tilde = as_number(require(x, "eps_tilde"), "eps_tilde");
      r.n = as_count(require(x, "n"), "n");
      r.d = as_count(require(x, "d"), "d");
      r.error = as_number(require(x, "error"), "error");
      r.score = as_number(require(x, "score"), "score");
      r.bound = as_number(require(x, "bound"), "bound");
      r.seed = require(x, "seed").get<std::uint64_t>();
      r.ms = as_number(require(x, "ms"), "ms");
      report.rows.push_back(std::move(r));
    }
    return report;
  });
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace tukey::io
