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

#include "knapsack/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <string>

namespace knapsack::log {

namespace {

std::atomic<int> g_level{static_cast<int>(Level::kInfo)};

const char* name(Level l) {
  switch (l) {
    case Level::kError: return "error";
    case Level::kInfo: return "info";
    case Level::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

Level level_from_env() {
  const char* v = std::getenv("KNAPSACK_LOG");
  if (!v) return Level::kInfo;
  const std::string s(v);
  if (s == "error") return Level::kError;
  if (s == "debug") return Level::kDebug;
  return Level::kInfo;
}

void set_level(Level l) { g_level = static_cast<int>(l); }

Level level() { return static_cast<Level>(g_level.load()); }

void write(Level l, std::string_view message) {
  if (static_cast<int>(l) > g_level.load()) return;
  std::cerr << '[' << name(l) << "] " << message << '\n';
}

}  // namespace knapsack::log
