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

#ifndef TUKEY_RNG_HPP_
#define TUKEY_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace tukey {

// Deterministic generator with explicit state. Child streams are derived from
// (seed, stream id) through a SplitMix64 finalizer so parallel tasks can each
// own an independent, reproducible stream.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  static constexpr const char* algorithm() { return "mt19937_64+splitmix64"; }

  // Independent child stream; does not advance this generator.
  SeededRng split(std::uint64_t stream) const;

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // N(0, 1)
  std::uint64_t below(std::uint64_t n);  // uniform on {0, ..., n-1}
  std::uint64_t binomial(std::uint64_t n, double p);
  std::uint64_t next_u64() { return engine_(); }

  // Unit vector uniform on the sphere S^{d-1}.
  std::vector<double> unit_vector(std::size_t d);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace tukey

#endif  // TUKEY_RNG_HPP_
