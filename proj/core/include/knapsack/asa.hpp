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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "knapsack/rcgd.hpp"
#include "knapsack/region.hpp"
#include "knapsack/spg.hpp"

namespace knapsack {

struct AsaConfig {
  double exp_a = 0.5;          // |g_i| >= |d1|^exp_a
  double exp_b = 1.5;          // slack >= |d1|^exp_b
  double mu = 0.1;             // restart SPG when |g_red| < mu |d1|
  double rho = 0.5;            // mu shrink when U is empty but g_red is small
  std::size_t repeat_limit = 5;
  double tol = 1e-8;           // on |d1|_inf
  std::size_t max_cycles = 200;  // SPG phases, each with its RCGD run
  bool undecided_inf_norm = false;  // |d1|_inf instead of |d1|_2 in U(x)
  double face_tol_ratio = 0.1;      // RCGD face tolerance = ratio * tol

  // Throws kInvalidArgument unless exp_a in (0,1), exp_b in (1,2), mu and
  // rho in (0,1), repeat_limit >= 1, tol >= 0.
  void validate() const;
};

enum class Phase { kSpg, kRcgd };
const char* to_string(Phase p);

enum class SwitchReason {
  kConverged,
  kUndecidedEmpty,
  kActiveSetRepeated,
  kBoundHit,
  kLinearHit,
  kReducedGradientSmall,
  kLineSearchFailure,
  kIterationLimit,
};
const char* to_string(SwitchReason r);

struct PhaseRecord {
  Phase phase = Phase::kSpg;
  std::size_t iterations = 0;
  double f_start = 0.0;
  double f_end = 0.0;
  std::size_t active_set_size = 0;
  SwitchReason reason = SwitchReason::kConverged;
};

using PhaseTrace = std::vector<PhaseRecord>;

enum class AsaStatus { kConverged, kCycleLimit };
const char* to_string(AsaStatus s);

struct AsaResult {
  Vector x;
  double f = 0.0;
  double norm_d1 = 0.0;
  AsaStatus status = AsaStatus::kCycleLimit;
  PhaseTrace trace;
  std::size_t cycles = 0;  // SPG phases started
  bool degenerate = false;  // an active bound has a near-zero multiplier
  std::uint64_t n_f = 0;
  std::uint64_t n_g = 0;
};

// U(x) = {i : |g_i| >= |d1|^exp_a and min(x_i - l_i, u_i - x_i) >= |d1|^exp_b},
// both quantities also strictly positive.
std::vector<std::size_t> undecided_set(std::span<const double> x,
                                       std::span<const double> grad,
                                       std::span<const double> d1,
                                       const KnapsackSet& set,
                                       const AsaConfig& cfg);

// Row handling on the face through x: equality sets keep the row active,
// interval sets treat it active when |a'x - b_side| <= 1e-12 scale, box-only
// regions have no row.
LinearState face_linear_state(std::span<const double> x,
                              const FeasibleRegion& region);

// Active-set driver alternating SPG and RCGD over region. cfg.tol replaces
// spg_cfg.tol.
AsaResult asa_solve(Objective& obj, const FeasibleRegion& region,
                    std::span<const double> x0, const AsaConfig& cfg = {},
                    const SpgConfig& spg_cfg = {},
                    const RcgdConfig& rcgd_cfg = {});

enum class ThreeWay { kInterior, kLower, kUpper };
const char* to_string(ThreeWay w);

struct ThreeSolveResult {
  AsaResult result;
  ThreeWay which = ThreeWay::kInterior;
  int solves = 0;
};

// Interval sets only. Box-only solve first; when a'x leaves [b_l, b_u], the
// b_l and b_u equality problems are solved and the lower f is returned
// (ties go to b_l).
ThreeSolveResult solve_interval_by_three(Objective& obj, const KnapsackSet& set,
                                         std::span<const double> x0,
                                         const AsaConfig& cfg = {},
                                         const SpgConfig& spg_cfg = {},
                                         const RcgdConfig& rcgd_cfg = {},
                                         const ProjectionOptions& popts = {});

// Header phase,iterations,f_start,f_end,active_set_size,reason.
void write_phase_trace_csv(std::ostream& os, const PhaseTrace& trace);

}  // namespace knapsack
