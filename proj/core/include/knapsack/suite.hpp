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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "knapsack/json_io.hpp"

namespace knapsack {

struct SuiteCase {
  std::string name;  // e.g. "qp_diag_interval/n=100"
  ProblemSpec problem;
};

// Solver benchmark instances per size: diagonal QPs on both set kinds,
// dense QPs (n <= 200), projections, a planted QP and the double well.
std::vector<SuiteCase> solver_suite(std::span<const std::size_t> sizes,
                                    std::uint64_t seed);

}  // namespace knapsack
