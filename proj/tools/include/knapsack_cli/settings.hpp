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

#include <nlohmann/json.hpp>

#include "knapsack/asa.hpp"
#include "knapsack/projection.hpp"
#include "knapsack/rcgd.hpp"
#include "knapsack/spg.hpp"
#include "knapsack/topopt.hpp"

namespace knapsack::cli {

struct TopoSettings {
  std::size_t grid = 64;
  double volume_fraction = 0.4;
  double k_alpha = 1.0;
  double k_beta = 2.0;
  std::size_t max_cycles = 500;
  double rel_change_tol = 1e-3;
  double pcg_tol = 1e-10;
  bool use_asa = false;
};

/// Every tunable the subcommands read. A --config file holds any subset:
///   {"asa": {...}, "spg": {...}, "rcgd": {..., "wolfe": {...}},
///    "projection": {...}, "topopt": {...}}
/// Unknown keys are errors.
struct Settings {
  AsaConfig asa;
  SpgConfig spg;
  RcgdConfig rcgd;
  ProjectionOptions projection;
  TopoSettings topopt;
};

// Overrides fields of s from j; throws JsonFieldError naming the bad key.
void apply_json(Settings& s, const nlohmann::json& j);

nlohmann::json to_json(const AsaConfig& c);
nlohmann::json to_json(const SpgConfig& c);
nlohmann::json to_json(const RcgdConfig& c);
nlohmann::json to_json(const ProjectionOptions& c);
nlohmann::json to_json(const TopoSettings& c);

}  // namespace knapsack::cli
