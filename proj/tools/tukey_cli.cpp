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

// Command-line front end. Talks to the library only through the C API.

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tukey/tukey.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(tukey_status s) {
  switch (s) {
    case TUKEY_ERR_INVALID_ARGUMENT:
    case TUKEY_ERR_DIMENSION:
    case TUKEY_ERR_CONFIG:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

void check(tukey_status s) {
  if (s != TUKEY_OK) throw Failure{exit_code_for(s), tukey_last_error()};
}

[[noreturn]] void config_error(const std::string& msg) { throw Failure{kExitConfig, msg}; }

std::string take(char* s) {
  std::string out(s);
  tukey_string_free(s);
  return out;
}

struct PointSet {
  tukey_pointset* p = nullptr;
  PointSet() = default;
  PointSet(const PointSet&) = delete;
  PointSet& operator=(const PointSet&) = delete;
  ~PointSet() { tukey_pointset_free(p); }
};

struct Report {
  tukey_report* r = nullptr;
  Report() = default;
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;
  ~Report() { tukey_report_free(r); }
};

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "inf") return HUGE_VAL;
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) config_error("bad number '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) config_error("empty entry in list '" + text + "'");
    out.push_back(parse_double(item.substr(a, b - a + 1)));
  }
  if (out.empty()) config_error("empty list");
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  std::string format = "csv";
};

Json load_config(const Globals& g) {
  if (g.config.empty()) return Json::object();
  Json j;
  try {
    j = Json::parse(read_text(g.config));
  } catch (const Json::exception& e) {
    config_error(g.config + ": " + e.what());
  }
  if (!j.is_object()) config_error(g.config + ": config must be a JSON object");
  return j;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{kExitRuntime, "cannot write '" + g.out + "'"};
  out << text;
}

// ---- shared flag groups ----------------------------------------------------

struct DistFlags {
  std::string kind;
  std::optional<std::size_t> d;
  std::optional<double> sigma;
  std::optional<double> radius;

  void add(CLI::App* app) {
    app->add_option("--distribution", kind, "Population: gaussian | ball | square");
    app->add_option("--d", d, "Dimension");
    app->add_option("--sigma", sigma, "Gaussian scale");
    app->add_option("--radius", radius, "Ball radius");
  }

  bool given() const { return !kind.empty() || d || sigma || radius; }

  // Overlays onto cfg["distribution"]; `fallback_d` applies when neither the
  // flags nor the config name a dimension.
  void apply(Json& cfg, std::optional<std::size_t> fallback_d = std::nullopt) const {
    if (!given() && !fallback_d) return;
    Json base = cfg.contains("distribution") ? cfg["distribution"] : Json::object();
    if (!given() && base.contains("kind")) return;
    Json dj = Json::object();
    std::string k = kind.empty() ? base.value("kind", std::string("gaussian")) : kind;
    dj["kind"] = k;
    if (k == "square") return void(cfg["distribution"] = dj);
    if (d) dj["d"] = *d;
    else if (base.contains("center")) dj["center"] = base["center"];
    else if (base.contains("d")) dj["d"] = base["d"];
    else if (fallback_d) dj["d"] = *fallback_d;
    if (k == "gaussian" || k == "gaussian_isotropic") {
      if (sigma) dj["sigma"] = *sigma;
      else if (base.contains("sigma")) dj["sigma"] = base["sigma"];
    } else if (k == "ball" || k == "uniform_ball") {
      if (radius) dj["radius"] = *radius;
      else if (base.contains("radius")) dj["radius"] = base["radius"];
    } else if (k == "atoms" || k == "discrete_atoms") {
      dj = base;
    }
    cfg["distribution"] = dj;
  }
};

struct ExperimentFlags {
  std::string estimator, attack, mode, engine;
  std::optional<double> eps, z;
  std::optional<std::size_t> n, trials, depth_budget, threads;
  bool timing = false;
  DistFlags dist;

  void add(CLI::App* app) {
    app->add_option("--estimator", estimator, "tukey | projection | cwise_median");
    app->add_option("--attack", attack, "pointmass | ball | tetrahedron | cluster | none");
    app->add_option("--mode", mode, "additive | tv | oblivious | adaptive");
    app->add_option("--engine", engine, "Depth engine: auto | exact1d | sweep2d | oracle | sampled");
    app->add_option("--eps", eps, "Corruption level");
    app->add_option("--z", z, "Attack distance");
    app->add_option("--n", n, "Sample size");
    app->add_option("--trials", trials, "Trials per grid point");
    app->add_option("--depth-budget", depth_budget, "Direction budget for sampled depth");
    app->add_option("--threads", threads, "Worker threads");
    app->add_flag("--timing", timing, "Record wall-clock milliseconds");
    dist.add(app);
  }

  void apply(Json& cfg, const Globals& g) const {
    if (!estimator.empty()) cfg["estimator"] = estimator;
    if (!mode.empty()) cfg["mode"] = mode;
    if (!engine.empty()) cfg["engine"] = engine;
    if (n) cfg["n"] = *n;
    if (trials) cfg["trials"] = *trials;
    if (depth_budget) cfg["depth_budget"] = *depth_budget;
    if (threads) cfg["threads"] = *threads;
    if (timing) cfg["timing"] = true;
    if (g.seed) cfg["seed"] = *g.seed;
    if (!attack.empty() || eps || z) {
      Json a = cfg.contains("attack") ? cfg["attack"] : Json::object();
      if (!attack.empty()) a["variant"] = attack;
      if (eps) a["epsilon"] = *eps;
      if (z) a["z"] = *z;
      cfg["attack"] = a;
    }
  }
};

bool is_pointmass(const std::string& v) { return v == "pointmass" || v == "pointmass_1d"; }

std::string attack_variant(const Json& cfg) {
  if (cfg.contains("attack") && cfg["attack"].contains("variant"))
    return cfg["attack"]["variant"].get<std::string>();
  return "none";
}

void emit_report(const Globals& g, const Report& rep, const Json& cfg) {
  if (g.format != "csv" && g.format != "json") config_error("--format must be csv or json");
  std::string path = g.out;
  if (path.empty() && cfg.contains("output") && cfg["output"].is_string()) path = cfg["output"].get<std::string>();
  if (!path.empty()) {
    check(tukey_report_write(rep.r, path.c_str(), g.format.c_str()));
    return;
  }
  char* text = nullptr;
  check(g.format == "json" ? tukey_report_to_json(rep.r, &text) : tukey_report_to_csv(rep.r, &text));
  std::cout << take(text);
}

void load_points(const std::string& path, PointSet& ps) {
  if (path.empty()) config_error("--dist is required");
  check(tukey_pointset_load(path.c_str(), &ps.p));
}

}  // namespace

int main(int argc, char** argv) {
  // "--point -0.5,..." would read as a flag; glue such values to their option.
  std::vector<std::string> args(argv, argv + argc);
  std::vector<std::string> fixed;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (i + 1 < args.size() && a.rfind("--", 0) == 0 && a.find('=') == std::string::npos) {
      const auto& next = args[i + 1];
      if (next.size() > 1 && next[0] == '-' && (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
        fixed.push_back(a + "=" + next);
        ++i;
        continue;
      }
    }
    fixed.push_back(a);
  }
  std::vector<char*> cargv;
  for (auto& s : fixed) cargv.push_back(s.data());

  CLI::App app{"Tukey depth, robust location estimates and corruption experiments"};
  app.set_version_flag("--version", std::string(tukey_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Random seed");
  app.add_option("--config", g.config, "JSON config file");
  app.add_option("--out", g.out, "Output path (stdout when omitted)");
  app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  std::function<void()> action;

  // depth
  auto* depth_cmd = app.add_subcommand("depth", "Tukey depth of a point");
  std::string depth_dist, depth_point, depth_engine;
  std::optional<std::size_t> depth_budget;
  depth_cmd->add_option("--dist", depth_dist, "Point set (CSV w,x1,... or JSON)")->required();
  depth_cmd->add_option("--point", depth_point, "Query point, comma separated")->required();
  depth_cmd->add_option("--engine", depth_engine, "auto | exact1d | sweep2d | oracle | sampled");
  depth_cmd->add_option("--budget", depth_budget, "Directions for the sampled engine");
  depth_cmd->callback([&] {
    action = [&] {
      const Json cfg = load_config(g);
      PointSet ps;
      load_points(depth_dist, ps);
      const auto mu = parse_list(depth_point);
      if (mu.size() != tukey_pointset_dim(ps.p))
        config_error("point has " + std::to_string(mu.size()) + " coordinates, data has " +
                     std::to_string(tukey_pointset_dim(ps.p)));
      Json opts = Json::object();
      if (!depth_engine.empty()) opts["engine"] = depth_engine;
      else if (cfg.contains("engine")) opts["engine"] = cfg["engine"];
      if (depth_budget) opts["budget"] = *depth_budget;
      else if (cfg.contains("depth_budget")) opts["budget"] = cfg["depth_budget"];
      if (g.seed) opts["seed"] = *g.seed;
      else if (cfg.contains("seed")) opts["seed"] = cfg["seed"];
      const std::string o = opts.dump();
      if (g.format == "json") {
        char* text = nullptr;
        check(tukey_depth_json(ps.p, mu.data(), o.c_str(), &text));
        emit(g, take(text) + "\n");
      } else {
        double value = 0.0;
        check(tukey_depth(ps.p, mu.data(), o.c_str(), &value, nullptr));
        emit(g, fmt(value) + "\n");
      }
    };
  });

  // median
  auto* median_cmd = app.add_subcommand("median", "Approximate Tukey median");
  std::string median_dist, median_engine;
  std::optional<std::size_t> median_budget, median_pairs, median_steps;
  median_cmd->add_option("--dist", median_dist, "Point set")->required();
  median_cmd->add_option("--engine", median_engine, "Depth engine");
  median_cmd->add_option("--budget", median_budget, "Directions for the sampled engine");
  median_cmd->add_option("--max-pairs", median_pairs, "Cap on pairwise midpoints");
  median_cmd->add_option("--refine-steps", median_steps, "Pattern-search rounds");
  median_cmd->callback([&] {
    action = [&] {
      const Json cfg = load_config(g);
      PointSet ps;
      load_points(median_dist, ps);
      Json opts = Json::object();
      if (!median_engine.empty()) opts["engine"] = median_engine;
      else if (cfg.contains("engine")) opts["engine"] = cfg["engine"];
      if (median_budget) opts["budget"] = *median_budget;
      else if (cfg.contains("depth_budget")) opts["budget"] = cfg["depth_budget"];
      if (median_pairs) opts["max_pairs"] = *median_pairs;
      else if (cfg.contains("max_pairs")) opts["max_pairs"] = cfg["max_pairs"];
      if (median_steps) opts["refine_steps"] = *median_steps;
      else if (cfg.contains("refine_steps")) opts["refine_steps"] = cfg["refine_steps"];
      if (g.seed) opts["seed"] = *g.seed;
      else if (cfg.contains("seed")) opts["seed"] = cfg["seed"];
      char* text = nullptr;
      check(tukey_median_json(ps.p, opts.dump().c_str(), &text));
      const Json r = Json::parse(take(text));
      if (g.format == "json") return emit(g, r.dump() + "\n");
      std::string out = "achieved_depth";
      const auto point = r["point"].get<std::vector<double>>();
      for (std::size_t j = 0; j < point.size(); ++j) out += ",x" + std::to_string(j + 1);
      out += "\n" + fmt(r["achieved_depth"].get<double>());
      for (double x : point) out += "," + fmt(x);
      emit(g, out + "\n");
    };
  });

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "Projection estimate onto template translates");
  std::string est_dist, est_template = "gaussian";
  std::optional<double> est_margin;
  std::optional<std::size_t> est_budget, est_starts, est_steps;
  est_cmd->add_option("--dist", est_dist, "Point set")->required();
  est_cmd->add_option("--template", est_template,
                      "gaussian[:sigma] | ball[:R] | square | template JSON file");
  est_cmd->add_option("--margin", est_margin, "Search box margin around the data");
  est_cmd->add_option("--budget", est_budget, "Directions in the objective");
  est_cmd->add_option("--starts", est_starts, "Random starts");
  est_cmd->add_option("--steps", est_steps, "Pattern-search rounds");
  est_cmd->callback([&] {
    action = [&] {
      const Json cfg = load_config(g);
      PointSet ps;
      load_points(est_dist, ps);
      const std::size_t d = tukey_pointset_dim(ps.p);
      Json templ;
      const auto colon = est_template.find(':');
      const std::string head = est_template.substr(0, colon);
      const double scale = colon == std::string::npos ? 1.0 : parse_double(est_template.substr(colon + 1));
      if (head == "gaussian") templ = {{"kind", "gaussian"}, {"d", d}, {"sigma", scale}};
      else if (head == "ball") templ = {{"kind", "ball"}, {"d", d}, {"radius", scale}};
      else if (head == "square") templ = {{"kind", "square"}};
      else {
        try {
          templ = Json::parse(read_text(est_template));
        } catch (const Json::exception& e) {
          config_error(est_template + ": " + e.what());
        }
      }
      Json opts{{"template", templ}};
      if (est_margin) opts["margin"] = *est_margin;
      if (est_budget) opts["budget"] = *est_budget;
      else if (cfg.contains("projection_budget")) opts["budget"] = cfg["projection_budget"];
      if (est_starts) opts["random_starts"] = *est_starts;
      else if (cfg.contains("projection_starts")) opts["random_starts"] = cfg["projection_starts"];
      if (est_steps) opts["steps"] = *est_steps;
      if (g.seed) opts["seed"] = *g.seed;
      else if (cfg.contains("seed")) opts["seed"] = cfg["seed"];
      char* text = nullptr;
      check(tukey_estimate_json(ps.p, opts.dump().c_str(), &text));
      const Json r = Json::parse(take(text));
      if (g.format == "json") return emit(g, r.dump() + "\n");
      std::string out = "objective";
      const auto point = r["mu_hat"].get<std::vector<double>>();
      for (std::size_t j = 0; j < point.size(); ++j) out += ",x" + std::to_string(j + 1);
      out += "\n" + fmt(r["objective"].get<double>());
      for (double x : point) out += "," + fmt(x);
      emit(g, out + "\n");
    };
  });

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Write a corrupted distribution");
  std::string attack_variant_flag;
  std::optional<double> attack_eps, attack_z;
  std::optional<std::size_t> attack_n;
  DistFlags attack_dist;
  attack_cmd->add_option("--variant", attack_variant_flag, "pointmass | ball | tetrahedron | cluster");
  attack_cmd->add_option("--eps", attack_eps, "Corruption level (defaults to the construction's)");
  attack_cmd->add_option("--z", attack_z, "Attack distance");
  attack_cmd->add_option("--n", attack_n, "Sample size for continuous populations");
  attack_dist.add(attack_cmd);
  attack_cmd->callback([&] {
    action = [&] {
      Json cfg = load_config(g);
      Json a = cfg.contains("attack") ? cfg["attack"] : Json::object();
      if (!attack_variant_flag.empty()) a["variant"] = attack_variant_flag;
      if (attack_eps) a["epsilon"] = *attack_eps;
      if (attack_z) a["z"] = *attack_z;
      cfg["attack"] = a;
      if (attack_n) cfg["n"] = *attack_n;
      if (g.seed) cfg["seed"] = *g.seed;
      std::optional<std::size_t> fallback;
      if (is_pointmass(attack_variant(cfg))) fallback = 1;
      attack_dist.apply(cfg, fallback);
      PointSet ps;
      check(tukey_attack(cfg.dump().c_str(), &ps.p));
      if (!g.out.empty()) {
        check(tukey_pointset_save(ps.p, g.out.c_str()));
        return;
      }
      char* text = nullptr;
      check(g.format == "json" ? tukey_pointset_to_json(ps.p, &text) : tukey_pointset_to_csv(ps.p, &text));
      std::cout << take(text) << (g.format == "json" ? "\n" : "");
    };
  });

  // sweep-bias
  auto* bias_cmd = app.add_subcommand("sweep-bias", "Error against corruption level");
  ExperimentFlags bias_flags;
  std::string eps_grid;
  bias_flags.add(bias_cmd);
  bias_cmd->add_option("--eps-grid", eps_grid, "Comma-separated levels in [0, 1)");
  bias_cmd->callback([&] {
    action = [&] {
      Json cfg = load_config(g);
      bias_flags.apply(cfg, g);
      bias_flags.dist.apply(cfg);
      if (!eps_grid.empty()) cfg["eps_grid"] = parse_list(eps_grid);
      Report rep;
      check(tukey_sweep_bias(cfg.dump().c_str(), &rep.r));
      emit_report(g, rep, cfg);
    };
  });

  // sweep-breakdown
  auto* brk_cmd = app.add_subcommand("sweep-breakdown", "Named constructions at growing distance");
  ExperimentFlags brk_flags;
  std::string z_grid, construction;
  brk_flags.add(brk_cmd);
  brk_cmd->add_option("--construction", construction, "tetrahedron | pointmass | ball");
  brk_cmd->add_option("--z-grid", z_grid, "Comma-separated distances");
  brk_cmd->callback([&] {
    action = [&] {
      Json cfg = load_config(g);
      brk_flags.apply(cfg, g);
      if (!construction.empty()) cfg["construction"] = construction;
      std::optional<std::size_t> fallback;
      if (is_pointmass(cfg.value("construction", std::string("tetrahedron")))) fallback = 1;
      brk_flags.dist.apply(cfg, fallback);
      if (!z_grid.empty()) cfg["z_grid"] = parse_list(z_grid);
      Report rep;
      check(tukey_sweep_breakdown(cfg.dump().c_str(), &rep.r));
      emit_report(g, rep, cfg);
    };
  });

  // sweep-scaling
  auto* scale_cmd = app.add_subcommand("sweep-scaling", "Error against sample size");
  ExperimentFlags scale_flags;
  std::string n_grid;
  scale_flags.add(scale_cmd);
  scale_cmd->add_option("--n-grid", n_grid, "Comma-separated ascending sample sizes");
  scale_cmd->callback([&] {
    action = [&] {
      Json cfg = load_config(g);
      scale_flags.apply(cfg, g);
      scale_flags.dist.apply(cfg);
      if (!n_grid.empty()) {
        std::vector<std::size_t> ns;
        for (double v : parse_list(n_grid)) {
          if (!(v >= 1.0) || v != std::floor(v)) config_error("n grid values must be positive integers");
          ns.push_back(static_cast<std::size_t>(v));
        }
        cfg["n_grid"] = ns;
      }
      Report rep;
      check(tukey_sweep_scaling(cfg.dump().c_str(), &rep.r));
      emit_report(g, rep, cfg);
    };
  });

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Bias bound for a decay profile");
  std::string bound_model = "tv", bound_decay = "gaussian:1.0";
  std::size_t bound_d = 0;
  double bound_eps = 0.0;
  std::optional<std::size_t> bound_n;
  double bound_delta = 0.05, bound_cvc = 0.5;
  bounds_cmd->add_option("--model", bound_model, "additive | tv | projection");
  bounds_cmd->add_option("--d", bound_d, "Dimension")->required();
  bounds_cmd->add_option("--eps", bound_eps, "Corruption level")->required();
  bounds_cmd->add_option("--decay", bound_decay, "gaussian:S | ball:R | square | piecewise:t:h,...");
  bounds_cmd->add_option("--n", bound_n, "Sample size: bound at the finite-sample level instead");
  bounds_cmd->add_option("--delta", bound_delta, "Failure probability for the finite-sample level");
  bounds_cmd->add_option("--c-vc", bound_cvc, "VC constant for the finite-sample level");
  bounds_cmd->callback([&] {
    action = [&] {
      double eps = bound_eps;
      if (bound_n) check(tukey_epsilon_tilde(bound_eps, *bound_n, bound_d, bound_delta, bound_cvc, &eps));
      double value = 0.0;
      check(tukey_bound(bound_model.c_str(), bound_decay.c_str(), bound_d, eps, &value));
      if (g.format == "json") {
        Json j{{"model", bound_model}, {"d", bound_d}, {"eps", eps}};
        j["value"] = std::isfinite(value) ? Json(value) : Json(fmt(value));
        emit(g, j.dump() + "\n");
      } else {
        emit(g, fmt(value) + "\n");
      }
    };
  });

  // First bare word must name a subcommand; global options may precede it.
  for (std::size_t i = 1; i < fixed.size(); ++i) {
    const auto& a = fixed[i];
    if (a.rfind("-", 0) == 0) {
      const bool takes_value = a == "--seed" || a == "--config" || a == "--out" || a == "--format";
      if (takes_value) ++i;
      continue;
    }
    if (!app.get_subcommand_no_throw(a)) {
      std::cerr << "error: unknown subcommand '" << a << "'\n\n" << app.help();
      return kExitConfig;
    }
    break;
  }

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  try {
    if (!action) {
      std::cerr << app.help();
      return kExitConfig;
    }
    action();
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
