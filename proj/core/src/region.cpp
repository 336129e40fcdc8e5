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

#include "knapsack/region.hpp"

namespace knapsack {

FeasibleRegion::FeasibleRegion(KnapsackSet set, ProjectionOptions opts,
                               bool box_only)
    : set_(std::move(set)), opts_(std::move(opts)), box_only_(box_only) {
  if (!box_only_) require_feasible(set_);
}

Vector FeasibleRegion::project(std::span<const double> y) const {
  if (box_only_) return clamp_to_box(set_, y);
  return knapsack::project(y, set_, opts_).z;
}

bool FeasibleRegion::contains(std::span<const double> x) const {
  if (x.size() != set_.size() || !in_box(set_, x)) return false;
  if (box_only_) return true;
  if (set_.is_equality()) {
    return linear_residual(set_, x) <= linear_tolerance(set_, x, set_.b());
  }
  const auto iv = set_.interval();
  const double b = std::max(std::abs(iv.lo), std::abs(iv.hi));
  return linear_residual(set_, x) <= linear_tolerance(set_, x, b);
}

}  // namespace knapsack
