// Copyright 2026 the ADT authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace adt {

/// Error taxonomy shared by the library and the CLI. Each category maps to a
/// stable process exit code (see exit_code_for).
///
///   ParseError     - malformed input text (JSON, YOLO lines, CSV)
///   IntegrityError - well-formed input that violates data invariants
///                    (duplicate ids, dangling references, bad shapes)
///   ConfigError    - invalid configuration or argument values
///   IoError        - filesystem failures
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class IntegrityError : public std::runtime_error {
 public:
  explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Tensor/list dimension mismatches. A flavor of bad data, so it shares the
/// integrity exit code.
class ShapeError : public IntegrityError {
 public:
  explicit ShapeError(const std::string& msg) : IntegrityError(msg) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Scalar argument outside a kernel's mathematical domain (e.g. p_t <= 0 for
/// the focal loss). Treated as a configuration problem at the CLI boundary.
class DomainError : public ConfigError {
 public:
  explicit DomainError(const std::string& msg) : ConfigError(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitIntegrityError = 3;
inline constexpr int kExitConfigError = 4;
inline constexpr int kExitIoError = 5;

}  // namespace adt
