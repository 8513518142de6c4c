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

#ifndef TUKEY_MEDIAN_HPP_
#define TUKEY_MEDIAN_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tukey/core_model.hpp"
#include "tukey/depth.hpp"
#include "tukey/rng.hpp"

namespace tukey {

enum class MedianMethod { exact1d, candidates, refined };

std::string_view to_string(MedianMethod method);

struct MedianResult {
  Point point;
  // Depth of `point` under `depth_engine` with the options used for the search.
  double achieved_depth = 0.0;
  std::size_t candidate_count = 0;
  MedianMethod method = MedianMethod::candidates;
  DepthEngine depth_engine = DepthEngine::oracle;
};

struct MedianOptions {
  DepthOptions depth;
  // Pairwise midpoints beyond this count are subsampled.
  std::size_t max_pairs = 100000;
  // Directions used to screen candidates before the full depth evaluation.
  std::size_t screen_directions = 256;
  // Sampled engine only: how many screened candidates get a full evaluation.
  std::size_t shortlist = 16;
  std::uint64_t seed = 0;
};

// Weighted median; the midpoint when the median set is an interval.
MedianResult median_1d(const WeightedPointSet& p);

// Best of: every atom, pairwise atom midpoints, the weighted centroid, the
// coordinate-wise median and `extra`. Ties go to the point closest to the
// weighted centroid, then to the lexicographically smallest.
//
// With an exact engine the search is a branch and bound over a cheap
// directional upper bound, so the result is the true argmax over the candidate
// set. With the sampled engine only a shortlist is fully evaluated.
MedianResult median_candidates(const WeightedPointSet& p, const MedianOptions& opts = {},
                               const std::vector<Point>& extra = {});

// Pattern search from `start`: axis and random probe directions, step starting
// at a quarter of the bounding-box diagonal and halving on failure (8 levels),
// at most `steps` rounds. Moves only on strict improvement.
MedianResult median_refine(const WeightedPointSet& p, const Point& start,
                           const MedianOptions& opts, std::size_t steps, SeededRng& rng);

// median_candidates followed by median_refine.
MedianResult tukey_median(const WeightedPointSet& p, const MedianOptions& opts = {},
                          std::size_t refine_steps = 64,
                          const std::vector<Point>& extra = {});

}  // namespace tukey

#endif  // TUKEY_MEDIAN_HPP_
