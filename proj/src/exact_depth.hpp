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

// Exact halfspace-depth solver over the atom arrangement. Internal header.

#ifndef TUKEY_SRC_EXACT_DEPTH_HPP_
#define TUKEY_SRC_EXACT_DEPTH_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "linalg.hpp"
#include "tukey/core_model.hpp"

namespace tukey::detail {

class ExactDepthSolver {
 public:
  struct Candidate {
    std::vector<char> mask;  // per group: counted in the closed halfspace
    Vec dir;                 // unit direction realizing `mask`
  };

  ExactDepthSolver(const WeightedPointSet& p, std::span<const double> mu);

  // Distinct nonzero offsets x_i - mu.
  std::size_t groups() const { return offsets_.size(); }

  // Mass of the groups in `mask` plus every atom at mu, summed in atom order.
  double mass(const std::vector<char>& mask) const;

  // Minimum over all directions. The enumeration stops early once a halfspace
  // of mass below `stop_below` is found; the result is then only an upper
  // bound that is itself below `stop_below`.
  Candidate solve_all(double stop_below = -std::numeric_limits<double>::infinity()) const;

  // Best orientation of the normal through mu orthogonal to the given
  // (d-1) groups, with boundary atoms resolved exactly when there are at most
  // `boundary_cap` of them and all counted otherwise. Returns nullopt for a
  // degenerate subset or when a quick estimate of the mass is not below
  // `accept_below` (up to 1e-12).
  std::optional<Candidate> evaluate_subset(
      const std::vector<std::size_t>& idx, std::size_t boundary_cap = 32,
      double accept_below = std::numeric_limits<double>::infinity()) const;

 private:
  struct Local {
    std::vector<std::size_t> members;  // groups counted
    Vec dir;
    double value = 0.0;
  };

  Local solve(const std::vector<std::size_t>& s, const std::vector<Vec>& basis,
              double stop_below = -std::numeric_limits<double>::infinity()) const;
  Local evaluate_normal(const std::vector<std::size_t>& s, const std::vector<Vec>& basis,
                        const Vec& normal, std::size_t boundary_cap) const;
  double local_mass(const std::vector<std::size_t>& members) const;

  std::size_t dim_;
  const WeightedPointSet* p_;
  std::vector<Vec> offsets_;
  std::vector<double> offset_norm_;
  std::vector<double> group_mass_;
  std::vector<double> flat_;  // offsets_, row-major
  double zero_mass_ = 0.0;
  std::vector<std::vector<std::size_t>> atoms_;  // per group, ascending
  std::vector<std::ptrdiff_t> group_of_;         // per atom; -1 at mu
};

}  // namespace tukey::detail

#endif  // TUKEY_SRC_EXACT_DEPTH_HPP_
