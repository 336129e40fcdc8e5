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
#include <deque>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "knapsack/objective.hpp"
#include "knapsack/region.hpp"

namespace knapsack {

/// Nonmonotone spectral projected gradient parameters.
struct SpgConfig {
  double gamma = 1e-4;          // sufficient decrease constant
  std::size_t memory = 10;      // nonmonotone reference length M
  double alpha_min = 1e-30;     // BB safeguards
  double alpha_max = 1e30;
  double sigma1 = 0.1;          // safeguarded quadratic backtracking window
  double sigma2 = 0.9;
  double sigma_neg_curv = 1.0;  // step used when s'y <= 0
  std::size_t max_iter = 10000;
  double tol = 1e-8;            // on |d1(x)|_inf
  std::size_t max_backtracks = 100;

  // Throws kInvalidArgument unless 0 < gamma < 1, alpha_min < alpha_max,
  // memory >= 1 and 0 < sigma1 < sigma2 < 1.
  void validate() const;
};

/// Current SPG point with the quantities the next step needs.
struct SolverIterate {
  Vector x;
  double fx = 0.0;
  Vector gx;
  Vector d1;          // P(x - g) - x
  double norm_d1 = 0.0;  // |d1|_inf
  double alpha_bb = 1.0;
  Vector s_prev;
  Vector y_prev;
  std::deque<double> history;  // last M objective values
};

struct SpgTraceRow {
  std::size_t iter = 0;
  double f = 0.0;
  double norm_d1 = 0.0;
  double alpha_bb = 0.0;
  std::uint64_t n_f = 0;
  std::uint64_t n_g = 0;
  // Line-search record of the step that produced this row (iter >= 1).
  double f_ref = 0.0;
  double delta = 0.0;
  double step = 0.0;
  bool slope_accepted = false;  // accepted by the roundoff-level derivative test
};

enum class SpgStatus { kConverged, kMaxIterations };

struct SpgResult {
  Vector x;
  double f = 0.0;
  double norm_d1 = 0.0;
  SpgStatus status = SpgStatus::kMaxIterations;
  std::size_t iterations = 0;
  std::vector<SpgTraceRow> trace;
};

// d^alpha(x) = P_D(x - alpha g) - x.
Vector scaled_projected_gradient(std::span<const double> x, double alpha,
                                 std::span<const double> grad,
                                 const FeasibleRegion& region);
Vector scaled_projected_gradient(std::span<const double> x, double alpha,
                                 std::span<const double> grad,
                                 const KnapsackSet& set);

// Barzilai-Borwein step s's / s'y clamped to [alpha_min, alpha_max], or
// cfg.sigma_neg_curv when s'y <= 0.
double bb_stepsize(std::span<const double> s, std::span<const double> y,
                   const SpgConfig& cfg);

struct LineSearchOutcome {
  Vector x;
  double f = 0.0;
  double alpha = 0.0;
  int evaluations = 0;
  Vector g;  // gradient at x when the derivative test was used, else empty
};

// Directional derivative along the search direction from a gradient.
using SlopeFn = std::function<double(std::span<const double> g)>;

// Grippo-Lampariello-Lucidi backtracking along x + alpha (target - x),
// alpha in (0, 1]. Accepts the first alpha with
// f(x + alpha d) <= f_ref + gamma alpha delta; alpha = 1 returns `target`
// bitwise. Backtracking takes the minimizer of the quadratic with q(0) = fx,
// q'(0) = delta, q(alpha) = f_trial when it lies in
// [sigma1 alpha, sigma2 alpha], else halves. Trial points are clamped to
// `box` when given. With `slope`, a trial whose f differs from fx only at
// roundoff level (1e-12 max(1, |fx|)) is also accepted when
// slope(g(trial)) <= (2 gamma - 1) delta, which is exact Armijo on
// quadratics. Throws LineSearchError after cfg.max_backtracks.
LineSearchOutcome nonmonotone_linesearch(Objective& obj,
                                         std::span<const double> x, double fx,
                                         std::span<const double> target,
                                         double f_ref, double delta,
                                         const SpgConfig& cfg,
                                         const KnapsackSet* box = nullptr,
                                         const SlopeFn* slope = nullptr);

/// Stepwise SPG so that drivers can interleave their own switching tests.
class SpgSolver {
 public:
  SpgSolver(Objective& obj, const FeasibleRegion& region, SpgConfig cfg);

  // Projects x0 onto the region, evaluates f, g, d1 and the first BB step
  // min(alpha_max, max(alpha_min, 1/|d1|_inf)).
  void reset(std::span<const double> x0);

  // Restarts from an already feasible point with known f and g.
  void reset(std::span<const double> x, double fx, std::span<const double> gx);

  // One projected step with nonmonotone line search. Returns the trace row.
  SpgTraceRow step();

  bool converged() const { return it_.norm_d1 <= cfg_.tol; }
  const SolverIterate& iterate() const noexcept { return it_; }
  const SpgConfig& config() const noexcept { return cfg_; }
  std::size_t iterations() const noexcept { return iter_; }

 private:
  void refresh_d1();
  SpgTraceRow row() const;

  Objective& obj_;
  const FeasibleRegion& region_;
  SpgConfig cfg_;
  SolverIterate it_;
  std::size_t iter_ = 0;
};

// Runs SPG from x0 until |d1(x)|_inf <= cfg.tol or cfg.max_iter steps.
SpgResult spg_solve(Objective& obj, const FeasibleRegion& region,
                    std::span<const double> x0, const SpgConfig& cfg = {});

// CSV with header iter,f,norm_d1,alpha_bb,n_f,n_g.
void write_spg_trace_csv(std::ostream& os, std::span<const SpgTraceRow> rows);

}  // namespace knapsack
