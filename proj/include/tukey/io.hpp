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

#ifndef TUKEY_IO_HPP_
#define TUKEY_IO_HPP_

#include <string>
#include <string_view>

#include "json.hpp"
#include "tukey/core_model.hpp"
#include "tukey/corruption.hpp"
#include "tukey/depth.hpp"
#include "tukey/harness.hpp"
#include "tukey/median.hpp"
#include "tukey/metrics.hpp"
#include "tukey/projection.hpp"

// Text formats. Parsing errors surface as ConfigError.

namespace tukey::io {

using Json = nlohmann::json;

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

// CSV with header w,x1,...,xd and one row per atom.
std::string point_set_to_csv(const WeightedPointSet& p);
WeightedPointSet point_set_from_csv(std::string_view text);

// {"weights": [...], "points": [[...], ...]}
Json to_json(const WeightedPointSet& p);
WeightedPointSet point_set_from_json(const Json& j);

// Reads CSV, or JSON when the path ends in ".json".
WeightedPointSet load_point_set(const std::string& path);
void save_point_set(const std::string& path, const WeightedPointSet& p);

Json to_json(const Point& p);
Point point_from_json(const Json& j);
// "1,2,3" (whitespace allowed).
Point parse_point(std::string_view text);

// {"kind": "gaussian", "center": [...], "sigma": s}
// {"kind": "ball", "center": [...], "radius": r}
// {"kind": "atoms", "center": [...], "offsets": {"weights": ..., "points": ...}}
// {"kind": "square", "center": [...]}  (center defaults to the origin)
Json to_json(const NamedDistribution& dist);
NamedDistribution distribution_from_json(const Json& j);

Json to_json(const AttackSpec& spec);
AttackSpec attack_from_json(const Json& j);

// {"variant": "gaussian", "sigma": 1.0}, {"variant": "ball", "radius": r, "d": d},
// {"variant": "piecewise", "t": [...], "h": [...]}, {"variant": "square"}.
Json to_json(const DecayProfile& h);
DecayProfile decay_from_json(const Json& j);

// {"template": <distribution>, "box": [[lo, hi], ...], "decay": <optional>}
Json to_json(const TemplateFamily& family);
TemplateFamily family_from_json(const Json& j);

// Unknown keys are rejected so typos do not silently fall back to defaults.
Json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});

Json to_json(const DepthResult& r);
Json to_json(const MedianResult& r);
Json to_json(const ProjectionResult& r);
Json to_json(const BoundReport& r);
Json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const Json& j);

Json parse_json(std::string_view text);

}  // namespace tukey::io

#endif  // TUKEY_IO_HPP_
