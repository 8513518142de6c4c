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

#ifndef TUKEY_ERROR_HPP_
#define TUKEY_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tukey {

// Bad argument value: out-of-range level, zero direction, malformed weights.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands live in different dimensions.
class DimensionMismatch : public InvalidArgument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : InvalidArgument("dimension mismatch: expected " +
                        std::to_string(expected) + ", got " +
                        std::to_string(actual)) {}
};

// A brute-force enumeration would exceed its work guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration, file, or CLI input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tukey

#endif  // TUKEY_ERROR_HPP_
