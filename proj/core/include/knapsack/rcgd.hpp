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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knapsack/knapsack_set.hpp"
#include "knapsack/nullspace.hpp"
#include "knapsack/objective.hpp"

namespace knapsack {

/// What the reduced phase does with the linear row.
enum class LinearState {
  kEqualityActive,       // a'x = b held fixed, Householder Z on free coords
  kIntervalInactive,     // Z = I, step capped so b_l <= a'x <= b_u
  kIntervalLowerActive,  // a'x = b_l held fixed
  kIntervalUpperActive,  // a'x = b_u held fixed
  kNoRow,                // box only, Z = I, no linear cap
};

const char* to_string(LinearState s);

enum class LinearSide { kLower, kUpper };

/// Affine parametrisation x = x0 + Z v of the current face: bound-active
/// coordinates frozen, free coordinates moved in the null space of the
/// active row (or freely when no row is active).
///
/// When the active row has a zero coefficient on every free coordinate the
/// row does not constrain the face and Z = I is used.
class ReducedSpace {
 public:
  ReducedSpace(const KnapsackSet& set, std::span<const double> anchor,
               IndexPartition part, LinearState state);

  const KnapsackSet& set() const noexcept { return *set_; }
  const IndexPartition& part() const noexcept { return part_; }
  LinearState linear_state() const noexcept { return state_; }
  std::span<const double> anchor() const noexcept { return anchor_; }
  bool row_active() const noexcept { return nullspace_.has_value(); }
  // Target a'x for an active row; NaN otherwise.
  double row_rhs() const noexcept { return rhs_; }
  std::size_t reduced_size() const noexcept { return reduced_size_; }

  // anchor with free coordinates replaced by mid(l, x0_F + Z v, u).
  Vector lift(std::span<const double> v) const;
  void lift(std::span<const double> v, std::span<double> out) const;
  // Full-space direction: Z d on free coordinates, 0 elsewhere.
  Vector lift_direction(std::span<const double> d) const;
  void lift_direction(std::span<const double> d, std::span<double> out) const;
  // Z' g_F.
  Vector reduce_gradient(std::span<const double> g_full) const;

 private:
  const KnapsackSet* set_;
  Vector anchor_;
  IndexPartition part_;
  LinearState state_;
  double rhs_;
  std::optional<HouseholderNullSpace> nullspace_;
  std::size_t reduced_size_ = 0;
};

// Largest alpha >= 0 with x_i + alpha p_i in [l_i, u_i] for every inactive i.
// +inf when no free coordinate moves.
double step_cap_box(std::span<const double> x, std::span<const double> p,
                    const KnapsackSet& set, const IndexPartition& part);

struct BoxCap {
  double alpha = 0.0;
  std::size_t index = 0;  // binding coordinate when alpha is finite
};
BoxCap step_cap_box_index(std::span<const double> x,
                          std::span<const double> p, const KnapsackSet& set,
                          const IndexPartition& part);

struct CgState {
  Vector v;
  Vector g;
  Vector d;
  Vector g_prev;
  Vector d_prev;
  bool restart_flag = true;
};

// Hager-Zhang direction -g + beta d_prev with
// beta = max(beta_N, -1 / (|d_prev| min(eta, |g_prev|))). Falls back to -g
// on the first step, after a restart, when d_prev'y = 0 or when
// g'd > -1e-3 |g|^2.
Vector cg_direction(const CgState& state, double eta = 0.01);

struct WolfeConfig {
  double delta = 0.1;
  double sigma = 0.9;
  int max_evaluations = 60;
  // Approximate Wolfe: phi(alpha) <= phi(0) + approx_eps max(1, |phi(0)|)
  // with phi'(alpha) <= (2 delta - 1) phi'(0) also counts as decrease.
  double approx_eps = 1e-12;
};

struct WolfePoint {
  double alpha = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
};

struct WolfeResult {
  double alpha = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
  bool capped = false;  // alpha == alpha_cap accepted by decrease only
  int evaluations = 0;
};

using LineFunction = std::function<WolfePoint(double)>;

// Standard or approximate Wolfe search on (0, alpha_cap]. The first trial is
// min(alpha_init, alpha_cap); when phi' increases along it, the secant zero
// of phi' is tried next (exact on quadratics). Afterwards extrapolation and
// cubic zoom. alpha_cap is returned without curvature when phi still
// decreases steeply there and phi(alpha_cap) satisfies sufficient decrease.
// Throws kInvalidArgument if dphi0 >= 0 or alpha_cap <= 0, LineSearchError
// after cfg.max_evaluations.
WolfeResult wolfe_linesearch(const LineFunction& phi, double phi0,
                             double dphi0, double alpha_cap,
                             double alpha_init = 1.0,
                             const WolfeConfig& cfg = {});

enum class RcgdVerdict { kContinue, kStop, kRestart };

struct RcgdConfig {
  double eta = 0.01;
  WolfeConfig wolfe;
  double tol = 1e-9;  // on |Z g_red|_inf
  std::size_t max_iter = 10000;
  // Driver hook evaluated at every iterate: x, full gradient, |Z g_red|_inf.
  std::function<RcgdVerdict(std::span<const double>, std::span<const double>,
                            double)>
      monitor;
};

enum class RcgdStatus {
  kConverged,
  kBoundHit,
  kLinearHit,
  kRestartRequested,
  kMaxIterations,
};

const char* to_string(RcgdStatus s);

enum class CapKind { kNone, kBox, kLinear };

struct RcgdTraceRow {
  std::size_t iter = 0;
  double f = 0.0;
  double norm_gred = 0.0;
  double alpha = 0.0;
  CapKind cap = CapKind::kNone;
};

struct RcgdResult {
  Vector x;
  double f = 0.0;
  Vector g;
  double norm_gred = 0.0;
  RcgdStatus status = RcgdStatus::kMaxIterations;
  std::size_t hit_index = 0;             // kBoundHit
  LinearSide hit_side = LinearSide::kLower;  // kLinearHit
  std::size_t iterations = 0;
  std::vector<RcgdTraceRow> trace;
};

// CG on the face described by rs starting at rs.anchor() (must be
// feasible). f and g at the anchor are evaluated here. The monitor, when
// set, can stop or restart at any iterate.
RcgdResult rcgd_solve(Objective& obj, const ReducedSpace& rs,
                      const RcgdConfig& cfg = {});

// Same with a known f and g at the anchor.
RcgdResult rcgd_solve(Objective& obj, const ReducedSpace& rs, double f0,
                      std::span<const double> g0, const RcgdConfig& cfg = {});

// Header iter,f,norm_gred,alpha,cap_kind.
void write_rcgd_trace_csv(std::ostream& os,
                          std::span<const RcgdTraceRow> rows);

}  // namespace knapsack
