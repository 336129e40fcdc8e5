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
#include <span>
#include <variant>
#include <vector>

#include "knapsack/vector_ops.hpp"

namespace knapsack {

struct Equality {
  double b = 0.0;
  bool operator==(const Equality&) const = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Interval&) const = default;
};

using Rhs = std::variant<Equality, Interval>;

/// Continuous knapsack set: the box l <= x <= u intersected with either
/// {a'x = b} or {b_l <= a'x <= b_u}.
///
/// Immutable after construction. The constructor rejects mismatched sizes,
/// l > u, b_l > b_u, empty dimension and non-finite entries.
class KnapsackSet {
 public:
  KnapsackSet(Vector lower, Vector upper, Vector a, Rhs rhs);

  std::size_t size() const noexcept { return a_.size(); }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  std::span<const double> a() const noexcept { return a_; }
  const Rhs& rhs() const noexcept { return rhs_; }

  bool is_equality() const noexcept {
    return std::holds_alternative<Equality>(rhs_);
  }
  bool is_interval() const noexcept {
    return std::holds_alternative<Interval>(rhs_);
  }
  // Right-hand side of an equality set. Throws for interval sets.
  double b() const;
  // Bounds of an interval set. Throws for equality sets.
  const Interval& interval() const;

  // Same box and coefficients, different right-hand side.
  KnapsackSet with_rhs(Rhs rhs) const;

  bool operator==(const KnapsackSet&) const = default;

 private:
  Vector lower_;
  Vector upper_;
  Vector a_;
  Rhs rhs_;
};

// [min a'x, max a'x] over the box.
struct AttainableRange {
  double min = 0.0;
  double max = 0.0;
};

AttainableRange attainable_range(const KnapsackSet& set);

// sum(u a^- + l a^+) <= b <= sum(u a^+ + l a^-).
bool feasibility_equality(const KnapsackSet& set);

// [b_l, b_u] intersects the attainable range of a'x over the box.
bool feasibility_interval(const KnapsackSet& set);

// Dispatches on the rhs kind.
bool is_feasible(const KnapsackSet& set);

// Throws Error(kInfeasibleSet) when the set is empty.
void require_feasible(const KnapsackSet& set);

// Scale-aware bound on |a'z - b| for a computed point z:
// 64 eps (|b| + |a|_inf n max|z_i|).
double linear_tolerance(const KnapsackSet& set, std::span<const double> z,
                        double b);

// Residual of the linear constraint: distance of a'x from the rhs value or
// interval (0 when inside the interval).
double linear_residual(const KnapsackSet& set, std::span<const double> x);

bool in_box(const KnapsackSet& set, std::span<const double> x);

// mid(l, y, u) componentwise.
Vector clamp_to_box(const KnapsackSet& set, std::span<const double> y);

/// Split of {0..n-1} into indices at a bound (active) and strictly inside
/// the box (inactive). Both lists are sorted.
struct IndexPartition {
  std::vector<std::size_t> active;
  std::vector<std::size_t> inactive;

  std::size_t size() const noexcept { return active.size() + inactive.size(); }
  std::size_t dim_active() const noexcept { return active.size(); }
  bool operator==(const IndexPartition&) const = default;
};

/// Relative active-set tolerance for solver iterates; projection outputs use
/// an exact test (tolerance 0).
inline constexpr double kIterateActiveTolerance = 1e-12;

// Index i is active iff |x_i - l_i| <= tol_i or |u_i - x_i| <= tol_i with
// tol_i = rel_tol * max(1, |l_i|, |u_i|). Points further than tol_i outside the
// box raise Error(kInfeasiblePoint).
IndexPartition partition(std::span<const double> x, const KnapsackSet& set,
                         double rel_tol = 0.0);

// Entries of x at the inactive indices.
Vector shrink(std::span<const double> x, const IndexPartition& part);

// fill with the inactive entries overwritten by v.
Vector expand(std::span<const double> v, const IndexPartition& part,
              std::span<const double> fill);

}  // namespace knapsack
