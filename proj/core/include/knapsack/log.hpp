// Copyright 2026 The knapsack-asa Authors
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

#pragma once

#include <string_view>

namespace knapsack::log {

enum class Level { kError = 0, kInfo = 1, kDebug = 2 };

// KNAPSACK_LOG in {error, info, debug}; info when unset or unrecognised.
Level level_from_env();

void set_level(Level level);
Level level();

// One line to stderr, prefixed with the level name, when enabled.
void write(Level level, std::string_view message);

inline void error(std::string_view m) { write(Level::kError, m); }
inline void info(std::string_view m) { write(Level::kInfo, m); }
inline void debug(std::string_view m) { write(Level::kDebug, m); }

}  // namespace knapsack::log
