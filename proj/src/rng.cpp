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

#include "tukey/rng.hpp"

#include <cmath>

#include "tukey/error.hpp"

namespace tukey {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

SeededRng SeededRng::split(std::uint64_t stream) const {
  return SeededRng(mix_seed(seed_, stream));
}

double SeededRng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double SeededRng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double SeededRng::normal() {
  return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

std::uint64_t SeededRng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("below(0) has no values");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

std::uint64_t SeededRng::binomial(std::uint64_t n, double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  return std::binomial_distribution<std::uint64_t>(n, p)(engine_);
}

std::vector<double> SeededRng::unit_vector(std::size_t d) {
  std::vector<double> v(d);
  for (;;) {
    double ss = 0.0;
    for (auto& x : v) {
      x = normal();
      ss += x * x;
    }
    if (ss > 1e-24) {
      const double inv = 1.0 / std::sqrt(ss);
      for (auto& x : v) x *= inv;
      return v;
    }
  }
}

}  // namespace tukey
