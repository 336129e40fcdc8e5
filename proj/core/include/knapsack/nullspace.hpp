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
#include <limits>
#include <span>
#include <vector>

#include "knapsack/vector_ops.hpp"

namespace knapsack {

enum class PivotRule {
  // Keep index 0 unless a_0 == 0, then use the largest |a_i|.
  kFirstUnlessZero,
  // Always move the largest |a_i| to the front.
  kMaxMagnitude,
};

/// Orthonormal null-space basis Z of a single row a, stored in compact
/// Householder form.
///
/// With the pivot entry swapped to position 0, Q = I - tau u u' where
/// u_0 = 1, u_i = a_i / (a_0 - zeta), tau = (zeta - a_0) / zeta and
/// zeta = -sign(a_0) |a|_2, so that Q a = zeta e_0. Z is Q with its first
/// column removed (and the pivot swap undone on the rows). Products with Z
/// and Z' cost one dot product and one axpy.
class HouseholderNullSpace {
 public:
  explicit HouseholderNullSpace(std::span<const double> a,
                                PivotRule rule = PivotRule::kFirstUnlessZero);

  std::size_t size() const noexcept { return u_.size(); }
  std::size_t reduced_size() const noexcept { return u_.size() - 1; }

  // u in pivoted coordinates (u[0] == 1).
  std::span<const double> u() const noexcept { return u_; }
  double tau() const noexcept { return tau_; }
  double zeta() const noexcept { return zeta_; }
  std::size_t pivot() const noexcept { return pivot_; }

  // out = Z v, v of size n-1, out of size n.
  void apply_z(std::span<const double> v, std::span<double> out) const;
  Vector apply_z(std::span<const double> v) const;

  // out = Z' w, w of size n, out of size n-1.
  void apply_zt(std::span<const double> w, std::span<double> out) const;
  Vector apply_zt(std::span<const double> w) const;

 private:
  std::vector<double> u_;
  double tau_ = 0.0;
  double zeta_ = 0.0;
  std::size_t pivot_ = 0;
};

/// P = I - a a' / (a'a). Rank n-1, idempotent, annihilates a.
class OrthoProjector {
 public:
  explicit OrthoProjector(Vector a);

  std::span<const double> a() const noexcept { return a_; }
  double ata() const noexcept { return ata_; }

  Vector apply(std::span<const double> v) const;

 private:
  Vector a_;
  double ata_;
};

Vector ortho_project(const OrthoProjector& p, std::span<const double> v);

// Projection of y onto {a'x = b}, bounds ignored: y + a (b - a'y) / (a'a).
Vector project_line_equality(std::span<const double> y,
                             std::span<const double> a, double b);

// Projection of y onto {b_l <= a'x <= b_u}, bounds ignored:
// mid(z_l, y, z_u) with z_l, z_u the projections onto a'x = b_l, b_u.
Vector project_line_interval(std::span<const double> y,
                             std::span<const double> a, double b_lo,
                             double b_hi);

/// Half-space row a'x >= rhs.
struct LinearInequality {
  Vector a;
  double rhs = 0.0;
};

// Largest step keeping every row satisfied along x + alpha p:
// min over rows with a'p < 0 of (rhs - a'x) / (a'p); +inf if none binds.
// Throws kInfeasiblePoint when x violates a row.
double feasible_step_cap(std::span<const double> x, std::span<const double> p,
                         std::span<const LinearInequality> rows);

// The same cap for b_l <= a'x <= b_u given ax = a'x and ap = a'p.
double interval_step_cap(double ax, double ap, double b_lo, double b_hi);

}  // namespace knapsack
