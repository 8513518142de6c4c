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

/* C interface to the tukeydepth library.
 *
 * Every fallible call returns a tukey_status and writes results through out
 * parameters. On failure tukey_last_error() describes the problem; the
 * message is thread-local and stays valid until the next call on the same
 * thread. Strings returned through char** are owned by the caller and must be
 * released with tukey_string_free.
 *
 * Option and config arguments are JSON text; NULL or "" means defaults.
 */

#ifndef TUKEY_TUKEY_H_
#define TUKEY_TUKEY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TUKEY_BUILDING_LIBRARY)
#    define TUKEY_API __declspec(dllexport)
#  else
#    define TUKEY_API __declspec(dllimport)
#  endif
#else
#  define TUKEY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tukey_status {
  TUKEY_OK = 0,
  TUKEY_ERR_INVALID_ARGUMENT = 1,
  TUKEY_ERR_DIMENSION = 2,
  TUKEY_ERR_GUARD = 3,
  TUKEY_ERR_CONFIG = 4,
  TUKEY_ERR_IO = 5,
  TUKEY_ERR_RUNTIME = 6,
  TUKEY_ERR_MEMORY = 7
} tukey_status;

typedef struct tukey_pointset tukey_pointset;
typedef struct tukey_report tukey_report;

/* One report row. String members point into the owning report. */
typedef struct tukey_row {
  int64_t trial;
  const char* estimator;
  const char* attack;
  const char* mode;
  double eps;
  double eps_tilde;
  size_t n;
  size_t d;
  double error;
  double score;
  double bound;
  uint64_t seed;
  double ms;
} tukey_row;

TUKEY_API const char* tukey_version(void);
TUKEY_API const char* tukey_last_error(void);
TUKEY_API const char* tukey_status_name(tukey_status status);
TUKEY_API void tukey_string_free(char* s);

/* Point sets. `coords` is row-major n x dim; NULL weights means uniform. */
TUKEY_API tukey_status tukey_pointset_create(size_t dim, size_t n, const double* coords,
                                             const double* weights, tukey_pointset** out);
/* CSV (w,x1,...,xd) or JSON ({"weights", "points"}) by file extension. */
TUKEY_API tukey_status tukey_pointset_load(const char* path, tukey_pointset** out);
TUKEY_API tukey_status tukey_pointset_save(const tukey_pointset* p, const char* path);
TUKEY_API tukey_status tukey_pointset_to_csv(const tukey_pointset* p, char** out);
TUKEY_API tukey_status tukey_pointset_to_json(const tukey_pointset* p, char** out);
TUKEY_API size_t tukey_pointset_size(const tukey_pointset* p);
TUKEY_API size_t tukey_pointset_dim(const tukey_pointset* p);
/* Copies atoms into caller buffers of n*dim and n doubles; either may be NULL. */
TUKEY_API tukey_status tukey_pointset_get(const tukey_pointset* p, double* coords, double* weights);
TUKEY_API void tukey_pointset_free(tukey_pointset* p);

/* Depth of mu (dim doubles). options: {"engine", "budget", "seed"}.
 * witness may be NULL, otherwise receives dim doubles. */
TUKEY_API tukey_status tukey_depth(const tukey_pointset* p, const double* mu, const char* options,
                                   double* value, double* witness);
/* Same, as {"value", "witness", "engine"}. */
TUKEY_API tukey_status tukey_depth_json(const tukey_pointset* p, const double* mu,
                                        const char* options, char** out);

/* Tukey median. options: {"engine", "budget", "seed", "max_pairs",
 * "screen_directions", "shortlist", "refine_steps"}. Result JSON has
 * "point", "achieved_depth", "engine", "candidate_count", "method". */
TUKEY_API tukey_status tukey_median_json(const tukey_pointset* p, const char* options, char** out);

/* Projection estimate onto the translates of a template. options:
 * {"template": <distribution>, "box": [[lo, hi], ...], "margin", "budget",
 *  "random_starts", "steps", "seed"}. Result JSON: "mu_hat", "objective",
 *  "evaluations", "decay". */
TUKEY_API tukey_status tukey_estimate_json(const tukey_pointset* p, const char* options, char** out);

/* Corrupted population (atomic) or n-point sample of it. config uses the
 * experiment config keys "distribution", "attack", "n", "seed". */
TUKEY_API tukey_status tukey_attack(const char* config, tukey_pointset** out);

/* model: "additive" | "tv" | "projection"; decay: "gaussian:1.0", "ball:R",
 * "square", "piecewise:t:h,...". *out may be +inf. */
TUKEY_API tukey_status tukey_bound(const char* model, const char* decay, size_t d, double eps,
                                   double* out);
TUKEY_API tukey_status tukey_epsilon_tilde(double eps, size_t n, size_t d, double delta,
                                           double c_vc, double* out);
TUKEY_API tukey_status tukey_tv_distance(const tukey_pointset* p, const tukey_pointset* q,
                                         double* out);
/* mode: "exact" (d <= 2) or "sampled". */
TUKEY_API tukey_status tukey_halfspace_metric(const tukey_pointset* p, const tukey_pointset* q,
                                              const char* mode, size_t budget, uint64_t seed,
                                              double* out);

/* Sweeps take an experiment config. Grids: "eps_grid" (bias), "z_grid" and
 * "construction" (breakdown), "n_grid" (scaling). */
TUKEY_API tukey_status tukey_sweep_bias(const char* config, tukey_report** out);
TUKEY_API tukey_status tukey_sweep_breakdown(const char* config, tukey_report** out);
TUKEY_API tukey_status tukey_sweep_scaling(const char* config, tukey_report** out);

TUKEY_API tukey_status tukey_report_to_csv(const tukey_report* r, char** out);
TUKEY_API tukey_status tukey_report_to_json(const tukey_report* r, char** out);
TUKEY_API tukey_status tukey_report_write(const tukey_report* r, const char* path, const char* format);
TUKEY_API tukey_status tukey_report_parse_csv(const char* text, tukey_report** out);
TUKEY_API size_t tukey_report_rows(const tukey_report* r);
TUKEY_API tukey_status tukey_report_row(const tukey_report* r, size_t i, tukey_row* out);
TUKEY_API void tukey_report_free(tukey_report* r);

#ifdef __cplusplus
}
#endif

#endif /* TUKEY_TUKEY_H_ */
