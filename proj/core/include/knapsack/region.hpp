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

#include <span>

#include "knapsack/knapsack_set.hpp"
#include "knapsack/projection.hpp"

namespace knapsack {

/// The set a solver projects onto: a knapsack set, or only its box when the
/// linear row is relaxed.
class FeasibleRegion {
 public:
  explicit FeasibleRegion(KnapsackSet set, ProjectionOptions opts = {},
                          bool box_only = false);

  const KnapsackSet& set() const noexcept { return set_; }
  bool box_only() const noexcept { return box_only_; }
  std::size_t size() const noexcept { return set_.size(); }
  const ProjectionOptions& projection_options() const noexcept { return opts_; }

  Vector project(std::span<const double> y) const;

  // Box membership (exact) and linear residual within linear_tolerance.
  bool contains(std::span<const double> x) const;

 private:
  KnapsackSet set_;
  ProjectionOptions opts_;
  bool box_only_;
};

}  // namespace knapsack
