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

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace adt {

enum class LogLevel : int { kQuiet = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Verbosity comes from the ADT_LOG environment variable
/// (quiet|warn|info|debug, default warn). Messages go to stderr so stdout
/// stays machine-readable.
inline LogLevel& log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("ADT_LOG");
    if (env == nullptr) return LogLevel::kWarn;
    std::string_view v(env);
    if (v == "quiet" || v == "0") return LogLevel::kQuiet;
    if (v == "warn" || v == "1") return LogLevel::kWarn;
    if (v == "info" || v == "2") return LogLevel::kInfo;
    if (v == "debug" || v == "3") return LogLevel::kDebug;
    return LogLevel::kWarn;
  }();
  return level;
}

inline void log_at(LogLevel lvl, std::string_view tag, std::string_view msg) {
  if (static_cast<int>(log_level()) >= static_cast<int>(lvl)) {
    std::cerr << tag << msg << "\n";
  }
}

inline void log_warn(std::string_view msg) { log_at(LogLevel::kWarn, "warning: ", msg); }
inline void log_info(std::string_view msg) { log_at(LogLevel::kInfo, "info: ", msg); }
inline void log_debug(std::string_view msg) { log_at(LogLevel::kDebug, "debug: ", msg); }

}  // namespace adt
