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

#include "knapsack/knapsack_set.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace knapsack {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kInfeasibleSet: return "infeasible set";
    case ErrorKind::kInfeasiblePoint: return "infeasible point";
    case ErrorKind::kNonFinite: return "non-finite value";
    case ErrorKind::kEvaluationFailure: return "evaluation failure";
    case ErrorKind::kLineSearchFailure: return "line search failure";
    case ErrorKind::kConvergenceFailure: return "convergence failure";
  }
  return "unknown";
}

namespace {

void require_finite(std::span<const double> v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorKind::kNonFinite, std::string(name) + "[" +
                                             std::to_string(i) +
                                             "] is not finite");
    }
  }
}

}  // namespace

KnapsackSet::KnapsackSet(Vector lower, Vector upper, Vector a, Rhs rhs)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      a_(std::move(a)),
      rhs_(rhs) {
  if (a_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "knapsack set: dimension is 0");
  }
  require_size(lower_.size(), a_.size(), "knapsack set: l");
  require_size(upper_.size(), a_.size(), "knapsack set: u");
  require_finite(lower_, "l");
  require_finite(upper_, "u");
  require_finite(a_, "a");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (lower_[i] > upper_[i]) {
      throw Error(ErrorKind::kInvalidArgument,
                  "knapsack set: l[" + std::to_string(i) + "] > u[" +
                      std::to_string(i) + "]");
    }
  }
  if (const auto* eq = std::get_if<Equality>(&rhs_)) {
    if (!std::isfinite(eq->b)) {
      throw Error(ErrorKind::kNonFinite, "knapsack set: b is not finite");
    }
  } else {
    const auto& iv = std::get<Interval>(rhs_);
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw Error(ErrorKind::kNonFinite,
                  "knapsack set: interval bounds must be finite");
    }
    if (iv.lo > iv.hi) {
      throw Error(ErrorKind::kInvalidArgument, "knapsack set: b_l > b_u");
    }
  }
}

double KnapsackSet::b() const {
  if (const auto* eq = std::get_if<Equality>(&rhs_)) return eq->b;
  throw Error(ErrorKind::kInvalidArgument,
              "knapsack set: b() requested on an interval set");
}

const Interval& KnapsackSet::interval() const {
  if (const auto* iv = std::get_if<Interval>(&rhs_)) return *iv;
  throw Error(ErrorKind::kInvalidArgument,
              "knapsack set: interval() requested on an equality set");
}

KnapsackSet KnapsackSet::with_rhs(Rhs rhs) const {
  return KnapsackSet(lower_, upper_, a_, rhs);
}

AttainableRange attainable_range(const KnapsackSet& set) {
  const auto l = set.lower();
  const auto u = set.upper();
  const auto a = set.a();
  AttainableRange r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ap = std::max(a[i], 0.0);
    const double am = std::min(a[i], 0.0);
    r.min += u[i] * am + l[i] * ap;
    r.max += u[i] * ap + l[i] * am;
  }
  return r;
}

bool feasibility_equality(const KnapsackSet& set) {
  const auto r = attainable_range(set);
  const double b = set.b();
  return r.min <= b && b <= r.max;
}

bool feasibility_interval(const KnapsackSet& set) {
  const auto r = attainable_range(set);
  const auto& iv = set.interval();
  return iv.lo <= r.max && r.min <= iv.hi;
}

bool is_feasible(const KnapsackSet& set) {
  return set.is_equality() ? feasibility_equality(set)
                           : feasibility_interval(set);
}

void require_feasible(const KnapsackSet& set) {
  if (!is_feasible(set)) {
    throw Error(ErrorKind::kInfeasibleSet,
                "knapsack set is empty: rhs outside the attainable range of "
                "a'x over the box");
  }
}

double linear_tolerance(const KnapsackSet& set, std::span<const double> z,
                        double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double n = static_cast<double>(set.size());
  return 64.0 * kEps * (std::abs(b) + norm_inf(set.a()) * n * norm_inf(z));
}

double linear_residual(const KnapsackSet& set, std::span<const double> x) {
  const double ax = dot(set.a(), x);
  if (set.is_equality()) return std::abs(ax - set.b());
  const auto& iv = set.interval();
  if (ax < iv.lo) return iv.lo - ax;
  if (ax > iv.hi) return ax - iv.hi;
  return 0.0;
}

bool in_box(const KnapsackSet& set, std::span<const double> x) {
  const auto l = set.lower();
  const auto u = set.upper();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(l[i] <= x[i] && x[i] <= u[i])) return false;
  }
  return true;
}

Vector clamp_to_box(const KnapsackSet& set, std::span<const double> y) {
  require_size(y.size(), set.size(), "clamp_to_box");
  const auto l = set.lower();
  const auto u = set.upper();
  Vector z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) z[i] = mid(l[i], y[i], u[i]);
  return z;
}

IndexPartition partition(std::span<const double> x, const KnapsackSet& set,
                         double rel_tol) {
  require_size(x.size(), set.size(), "partition");
  const auto l = set.lower();
  const auto u = set.upper();
  IndexPartition p;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double tol =
        rel_tol * std::max({1.0, std::abs(l[i]), std::abs(u[i])});
    if (x[i] < l[i] - tol || x[i] > u[i] + tol || std::isnan(x[i])) {
      throw Error(ErrorKind::kInfeasiblePoint,
                  "infeasible point: x[" + std::to_string(i) +
                      "] outside [l, u]");
    }
    if (std::abs(x[i] - l[i]) <= tol || std::abs(u[i] - x[i]) <= tol) {
      p.active.push_back(i);
    } else {
      p.inactive.push_back(i);
    }
  }
  return p;
}

Vector shrink(std::span<const double> x, const IndexPartition& part) {
  require_size(x.size(), part.size(), "shrink");
  Vector v;
  v.reserve(part.inactive.size());
  for (std::size_t i : part.inactive) v.push_back(x[i]);
  return v;
}

Vector expand(std::span<const double> v, const IndexPartition& part,
              std::span<const double> fill) {
  require_size(v.size(), part.inactive.size(), "expand");
  require_size(fill.size(), part.size(), "expand fill");
  Vector x(fill.begin(), fill.end());
  for (std::size_t k = 0; k < v.size(); ++k) x[part.inactive[k]] = v[k];
  return x;
}

}  // namespace knapsack
