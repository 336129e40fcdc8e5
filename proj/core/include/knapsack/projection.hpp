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
#include <functional>
#include <span>
#include <vector>

#include "knapsack/knapsack_set.hpp"

namespace knapsack {

enum class Summation { kNaive, kCompensated };

/// Snapshot of the hybrid bisection / inverse-quadratic root finder.
///
/// lambda_b is the best approximation, lambda_c the contrapoint and lambda_a
/// the previous iterate. At every accepted state h_b * h_c <= 0 and
/// |h_b| <= |h_c|.
struct BreakpointSolverState {
  double lambda_a = 0.0;
  double lambda_b = 0.0;
  double lambda_c = 0.0;
  double h_a = 0.0;
  double h_b = 0.0;
  double h_c = 0.0;
  double pq_prev = 0.0;
  int eval_count = 0;
  double eps = 0.0;
  double eps_machine = 0.0;
};

struct ProjectionOptions {
  // Target bracket tolerance on the multiplier.
  double eps = 1e-15;
  Summation summation = Summation::kNaive;
  // Freeze components whose value is fixed over the current bracket.
  bool freeze = true;
  // Return mid(l, y, u) directly when it already satisfies b_l <= a'x <= b_u.
  bool interval_shortcut = true;
  // A trial step with |p| <= eps |q| moves lambda_b by tol toward lambda_c.
  // false: such steps become bisections.
  bool minimal_step = true;
  // Called after every accepted root-finder state.
  std::function<void(const BreakpointSolverState&)> observer;
};

/// Per-index breakpoints of h: lambda_lo[i] = (y_i - l_i)/a_i and
/// lambda_hi[i] = (y_i - u_i)/a_i (NaN where a_i == 0), plus their extremes.
struct BreakpointData {
  Vector lambda_lo;
  Vector lambda_hi;
  double lambda_left = 0.0;
  double lambda_right = 0.0;
  bool empty = true;  // no index with a_i != 0
};

BreakpointData compute_breakpoints(std::span<const double> y,
                                   const KnapsackSet& set);

enum class Frozen : std::uint8_t { kFree, kAtLower, kAtUpper };

/// Components of x(lambda) known to sit at a bound over a bracket. The frozen
/// contributions sum(a_i x_i) accumulate in `offset`.
struct FreezeTable {
  std::vector<Frozen> state;
  double offset = 0.0;
  std::size_t frozen_count = 0;

  explicit FreezeTable(std::size_t n) : state(n, Frozen::kFree) {}
};

// Freezes every free component whose value of mid(l_i, y_i - lambda a_i, u_i)
// is constant for lambda in [lambda_l, lambda_r].
void freeze_components(FreezeTable& table, const BreakpointData& data,
                       const KnapsackSet& set, double lambda_l,
                       double lambda_r);

// h(lambda) = b - sum_i a_i mid(l_i, y_i - lambda a_i, u_i). Frozen entries
// contribute their clamp value through table->offset.
double h_eval(double lambda, std::span<const double> y, const KnapsackSet& set,
              double b, const FreezeTable* table = nullptr);

struct MultiplierResult {
  double lambda = 0.0;
  int eval_count = 0;
  BreakpointSolverState state;
};

// Root of h for an equality set. Throws kInfeasibleSet or kNonFinite.
MultiplierResult find_multiplier(std::span<const double> y,
                                 const KnapsackSet& set,
                                 const ProjectionOptions& opts = {});

struct ProjectionResult {
  Vector z;
  // Multiplier of the linear row: z = mid(l, y - lambda a, u).
  double lambda = 0.0;
  int eval_count = 0;
};

// Euclidean projection onto {l <= x <= u, a'x = b}.
ProjectionResult project_equality(std::span<const double> y,
                                  const KnapsackSet& set,
                                  const ProjectionOptions& opts = {});

// Euclidean projection onto {l <= x <= u, b_l <= a'x <= b_u}, computed as the
// componentwise median of (x_L, y, x_U) where x_L and x_U are the equality
// projections for b_l and b_u. The b_l solve is warm-started from the b_u
// trajectory.
ProjectionResult project_interval(std::span<const double> y,
                                  const KnapsackSet& set,
                                  const ProjectionOptions& opts = {});

// Dispatches on the rhs kind.
ProjectionResult project(std::span<const double> y, const KnapsackSet& set,
                         const ProjectionOptions& opts = {});

}  // namespace knapsack
