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

#include "tukey/tukey.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "tukey/corruption.hpp"
#include "tukey/depth.hpp"
#include "tukey/error.hpp"
#include "tukey/harness.hpp"
#include "tukey/io.hpp"
#include "tukey/median.hpp"
#include "tukey/metrics.hpp"
#include "tukey/projection.hpp"

struct tukey_pointset {
  tukey::WeightedPointSet set;
};

struct tukey_report {
  tukey::ExperimentReport report;
};

namespace {

using tukey::io::Json;

thread_local std::string last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

tukey_status fail(tukey_status status, const char* what) {
  last_error = what;
  return status;
}

template <typename F>
tukey_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return TUKEY_OK;
  } catch (const tukey::DimensionMismatch& e) {
    return fail(TUKEY_ERR_DIMENSION, e.what());
  } catch (const tukey::InvalidArgument& e) {
    return fail(TUKEY_ERR_INVALID_ARGUMENT, e.what());
  } catch (const tukey::GuardExceeded& e) {
    return fail(TUKEY_ERR_GUARD, e.what());
  } catch (const tukey::ConfigError& e) {
    return fail(TUKEY_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(TUKEY_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TUKEY_ERR_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(TUKEY_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(TUKEY_ERR_RUNTIME, "unknown error");
  }
}

void need(const void* ptr, const char* name) {
  if (!ptr) throw tukey::InvalidArgument(std::string(name) + " is NULL");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Json options_of(const char* text) {
  if (!text || !*text) return Json::object();
  Json j = tukey::io::parse_json(text);
  if (!j.is_object()) throw tukey::ConfigError("options must be a JSON object");
  return j;
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    throw tukey::ConfigError(std::string("option '") + key + "' has the wrong type");
  }
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) throw tukey::ConfigError("unknown option '" + item.key() + "'");
  }
}

tukey::DepthOptions depth_options(const Json& j) {
  tukey::DepthOptions o;
  if (auto it = j.find("engine"); it != j.end()) o.engine = tukey::parse_depth_engine(it->get<std::string>());
  o.budget = get_or<std::size_t>(j, "budget", o.budget);
  o.seed = get_or<std::uint64_t>(j, "seed", o.seed);
  if (o.budget == 0) throw tukey::ConfigError("budget must be >= 1");
  return o;
}

tukey::Point point_of(const tukey_pointset* p, const double* mu) {
  need(mu, "mu");
  return tukey::Point(std::vector<double>(mu, mu + p->set.dim()));
}

tukey::DepthResult run_depth(const tukey_pointset* p, const double* mu, const char* options) {
  need(p, "pointset");
  Json j = options_of(options);
  check_keys(j, {"engine", "budget", "seed"});
  return tukey::depth(p->set, point_of(p, mu), depth_options(j));
}

tukey::ExperimentConfig config_of(const Json& j) {
  auto c = tukey::io::config_from_json(j);
  c.validate();
  return c;
}

tukey_status make_report(tukey_report** out, tukey::ExperimentReport report) {
  *out = new tukey_report{std::move(report)};
  return TUKEY_OK;
}

}  // namespace

extern "C" {

const char* tukey_version(void) { return TUKEY_VERSION_STRING; }

const char* tukey_last_error(void) { return last_error.c_str(); }

const char* tukey_status_name(tukey_status status) {
  switch (status) {
    case TUKEY_OK: return "ok";
    case TUKEY_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case TUKEY_ERR_DIMENSION: return "dimension_mismatch";
    case TUKEY_ERR_GUARD: return "guard_exceeded";
    case TUKEY_ERR_CONFIG: return "config_error";
    case TUKEY_ERR_IO: return "io_error";
    case TUKEY_ERR_RUNTIME: return "runtime_error";
    case TUKEY_ERR_MEMORY: return "out_of_memory";
  }
  return "unknown";
}

void tukey_string_free(char* s) { delete[] s; }

tukey_status tukey_pointset_create(size_t dim, size_t n, const double* coords, const double* weights,
                                   tukey_pointset** out) {
  return guard([&] {
    need(out, "out");
    need(coords, "coords");
    std::vector<double> c(coords, coords + dim * n);
    std::vector<double> w = weights ? std::vector<double>(weights, weights + n)
                                    : std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0);
    *out = new tukey_pointset{tukey::WeightedPointSet(dim, std::move(c), std::move(w))};
  });
}

tukey_status tukey_pointset_load(const char* path, tukey_pointset** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new tukey_pointset{tukey::io::load_point_set(path)};
  });
}

tukey_status tukey_pointset_save(const tukey_pointset* p, const char* path) {
  return guard([&] {
    need(p, "pointset");
    need(path, "path");
    try {
      tukey::io::save_point_set(path, p->set);
    } catch (const tukey::ConfigError&) {
      throw;
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  });
}

tukey_status tukey_pointset_to_csv(const tukey_pointset* p, char** out) {
  return guard([&] {
    need(p, "pointset");
    need(out, "out");
    *out = copy_string(tukey::io::point_set_to_csv(p->set));
  });
}

tukey_status tukey_pointset_to_json(const tukey_pointset* p, char** out) {
  return guard([&] {
    need(p, "pointset");
    need(out, "out");
    *out = copy_string(tukey::io::to_json(p->set).dump());
  });
}

size_t tukey_pointset_size(const tukey_pointset* p) { return p ? p->set.size() : 0; }

size_t tukey_pointset_dim(const tukey_pointset* p) { return p ? p->set.dim() : 0; }

tukey_status tukey_pointset_get(const tukey_pointset* p, double* coords, double* weights) {
  return guard([&] {
    need(p, "pointset");
    if (coords) std::memcpy(coords, p->set.coords().data(), p->set.coords().size() * sizeof(double));
    if (weights) std::memcpy(weights, p->set.weights().data(), p->set.size() * sizeof(double));
  });
}

void tukey_pointset_free(tukey_pointset* p) { delete p; }

tukey_status tukey_depth(const tukey_pointset* p, const double* mu, const char* options, double* value,
                         double* witness) {
  return guard([&] {
    need(value, "value");
    const auto r = run_depth(p, mu, options);
    *value = r.value;
    if (witness) std::memcpy(witness, r.witness.vec().data(), r.witness.dim() * sizeof(double));
  });
}

tukey_status tukey_depth_json(const tukey_pointset* p, const double* mu, const char* options, char** out) {
  return guard([&] {
    need(out, "out");
    *out = copy_string(tukey::io::to_json(run_depth(p, mu, options)).dump());
  });
}

tukey_status tukey_median_json(const tukey_pointset* p, const char* options, char** out) {
  return guard([&] {
    need(p, "pointset");
    need(out, "out");
    Json j = options_of(options);
    check_keys(j, {"engine", "budget", "seed", "max_pairs", "screen_directions", "shortlist", "refine_steps"});
    tukey::MedianOptions mo;
    mo.depth = depth_options(j);
    mo.seed = mo.depth.seed;
    mo.max_pairs = get_or<std::size_t>(j, "max_pairs", mo.max_pairs);
    mo.screen_directions = get_or<std::size_t>(j, "screen_directions", mo.screen_directions);
    mo.shortlist = get_or<std::size_t>(j, "shortlist", mo.shortlist);
    const auto steps = get_or<std::size_t>(j, "refine_steps", 64);
    *out = copy_string(tukey::io::to_json(tukey::tukey_median(p->set, mo, steps)).dump());
  });
}

tukey_status tukey_estimate_json(const tukey_pointset* p, const char* options, char** out) {
  return guard([&] {
    need(p, "pointset");
    need(out, "out");
    Json j = options_of(options);
    check_keys(j, {"template", "box", "margin", "decay", "budget", "random_starts", "steps", "seed"});
    auto it = j.find("template");
    if (it == j.end()) throw tukey::ConfigError("estimate needs a 'template' distribution");
    const auto templ = tukey::io::distribution_from_json(*it);
    if (templ.dim() != p->set.dim()) throw tukey::DimensionMismatch(p->set.dim(), templ.dim());
    Json family_json{{"template", *it}};
    if (auto b = j.find("box"); b != j.end()) {
      family_json["box"] = *b;
    } else {
      const double margin = get_or<double>(j, "margin", 1.0);
      Json box = Json::array();
      for (const auto& [lo, hi] : tukey::bounding_box(p->set, margin)) box.push_back({lo, hi});
      family_json["box"] = box;
    }
    if (auto d = j.find("decay"); d != j.end()) family_json["decay"] = *d;
    const auto family = tukey::io::family_from_json(family_json);
    tukey::ProjectionConfig pc;
    pc.budget = get_or<std::size_t>(j, "budget", pc.budget);
    pc.random_starts = get_or<std::size_t>(j, "random_starts", pc.random_starts);
    pc.steps = get_or<std::size_t>(j, "steps", pc.steps);
    tukey::SeededRng rng(get_or<std::uint64_t>(j, "seed", 0));
    const auto r = tukey::project_estimate(p->set, family, pc, rng);
    Json result = tukey::io::to_json(r);
    result["decay"] = tukey::io::to_json(family.decay);
    *out = copy_string(result.dump());
  });
}

tukey_status tukey_attack(const char* config, tukey_pointset** out) {
  return guard([&] {
    need(out, "out");
    Json j = options_of(config);
    auto c = tukey::io::config_from_json(j);
    auto spec = c.attack;
    if (spec.epsilon == 0.0) spec.epsilon = tukey::construction_level(spec.variant, c.distribution.dim());
    spec.validate();
    auto dist = c.distribution;
    if (spec.variant == tukey::AttackVariant::tetrahedron_tv &&
        (dist.kind() != tukey::DistributionKind::discrete_atoms || dist.dim() != 3))
      dist = tukey::NamedDistribution::discrete_atoms(tukey::Point::zeros(3), tukey::square_atoms_3d());
    const auto pop = tukey::corrupt_population(dist, spec);
    if (!pop.base) {
      *out = new tukey_pointset{tukey::to_point_set(pop)};
    } else {
      tukey::SeededRng rng(c.seed);
      *out = new tukey_pointset{tukey::sample(pop, c.n, rng)};
    }
  });
}

tukey_status tukey_bound(const char* model, const char* decay, size_t d, double eps, double* out) {
  return guard([&] {
    need(model, "model");
    need(decay, "decay");
    need(out, "out");
    if (d == 0) throw tukey::InvalidArgument("d must be >= 1");
    const auto m = tukey::parse_bound_model(model);
    const auto h = tukey::DecayProfile::parse(decay, d);
    *out = tukey::bias_bound(m, h, eps, d).value;
  });
}

tukey_status tukey_epsilon_tilde(double eps, size_t n, size_t d, double delta, double c_vc, double* out) {
  return guard([&] {
    need(out, "out");
    *out = tukey::epsilon_tilde(eps, n, d, delta, c_vc);
  });
}

tukey_status tukey_tv_distance(const tukey_pointset* p, const tukey_pointset* q, double* out) {
  return guard([&] {
    need(p, "p");
    need(q, "q");
    need(out, "out");
    *out = tukey::tv_distance(p->set, q->set);
  });
}

tukey_status tukey_halfspace_metric(const tukey_pointset* p, const tukey_pointset* q, const char* mode,
                                    size_t budget, uint64_t seed, double* out) {
  return guard([&] {
    need(p, "p");
    need(q, "q");
    need(out, "out");
    const std::string m = mode ? mode : "exact";
    tukey::HalfspaceMode hm;
    if (m == "exact") hm = tukey::HalfspaceMode::exact;
    else if (m == "sampled") hm = tukey::HalfspaceMode::sampled;
    else throw tukey::InvalidArgument("unknown halfspace mode '" + m + "'");
    *out = tukey::halfspace_metric(p->set, q->set, hm, budget, seed);
  });
}

tukey_status tukey_sweep_bias(const char* config, tukey_report** out) {
  return guard([&] {
    need(out, "out");
    Json j = options_of(config);
    const auto c = config_of(j);
    const auto grid = get_or<std::vector<double>>(j, "eps_grid", {c.attack.epsilon});
    make_report(out, tukey::run_bias_sweep(c, grid));
  });
}

tukey_status tukey_sweep_breakdown(const char* config, tukey_report** out) {
  return guard([&] {
    need(out, "out");
    Json j = options_of(config);
    const auto c = config_of(j);
    const auto construction = tukey::parse_attack_variant(get_or<std::string>(j, "construction", "tetrahedron"));
    const auto grid = get_or<std::vector<double>>(j, "z_grid", {10.0, 100.0, 1000.0});
    make_report(out, tukey::run_breakdown_sweep(c, construction, grid));
  });
}

tukey_status tukey_sweep_scaling(const char* config, tukey_report** out) {
  return guard([&] {
    need(out, "out");
    Json j = options_of(config);
    const auto c = config_of(j);
    const auto grid = get_or<std::vector<std::size_t>>(j, "n_grid", {250, 1000, 4000});
    make_report(out, tukey::run_scaling(c, grid));
  });
}

tukey_status tukey_report_to_csv(const tukey_report* r, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    *out = copy_string(r->report.to_csv());
  });
}

tukey_status tukey_report_to_json(const tukey_report* r, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    *out = copy_string(tukey::io::to_json(r->report).dump(2) + "\n");
  });
}

tukey_status tukey_report_write(const tukey_report* r, const char* path, const char* format) {
  return guard([&] {
    need(r, "report");
    need(path, "path");
    const std::string f = format ? format : "csv";
    std::string text;
    if (f == "csv") text = r->report.to_csv();
    else if (f == "json") text = tukey::io::to_json(r->report).dump(2) + "\n";
    else throw tukey::ConfigError("unknown format '" + f + "'");
    try {
      tukey::io::write_file(path, text);
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  });
}

tukey_status tukey_report_parse_csv(const char* text, tukey_report** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    make_report(out, tukey::ExperimentReport::parse_csv(text));
  });
}

size_t tukey_report_rows(const tukey_report* r) { return r ? r->report.rows.size() : 0; }

tukey_status tukey_report_row(const tukey_report* r, size_t i, tukey_row* out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    if (i >= r->report.rows.size()) throw tukey::InvalidArgument("row index out of range");
    const auto& x = r->report.rows[i];
    *out = tukey_row{x.trial, x.estimator.c_str(), x.attack.c_str(), x.mode.c_str(), x.eps, x.eps_tilde,
                     x.n, x.d, x.error, x.score, x.bound, x.seed, x.ms};
  });
}

void tukey_report_free(tukey_report* r) { delete r; }

}  // extern "C"
