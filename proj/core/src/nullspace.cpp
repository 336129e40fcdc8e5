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

#include "knapsack/nullspace.hpp"

#include <cmath>
#include <string>

namespace knapsack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonzero(std::span<const double> a, const char* who) {
  for (double v : a) {
    if (v != 0.0) return;
  }
  throw Error(ErrorKind::kInvalidArgument, std::string(who) + ": a is zero");
}

}  // namespace

HouseholderNullSpace::HouseholderNullSpace(std::span<const double> a,
                                           PivotRule rule) {
  require_nonzero(a, "householder null space");
  if (!all_finite(a)) {
    throw Error(ErrorKind::kNonFinite, "householder null space: a not finite");
  }
  const std::size_t n = a.size();
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(a[i]) > std::abs(a[imax])) imax = i;
  }
  pivot_ = (rule == PivotRule::kMaxMagnitude || a[0] == 0.0) ? imax : 0;

  // Entry k of the pivoted vector.
  auto pivoted = [&](std::size_t k) {
    if (k == 0) return a[pivot_];
    if (k == pivot_) return a[0];
    return a[k];
  };

  // Scaled 2-norm to avoid overflow for large entries.
  const double scale = std::abs(a[imax]);
  double ss = 0.0;
  for (double v : a) ss += (v / scale) * (v / scale);
  const double norm = scale * std::sqrt(ss);

  const double a0 = pivoted(0);
  zeta_ = (a0 >= 0.0 ? -1.0 : 1.0) * norm;
  tau_ = (zeta_ - a0) / zeta_;
  const double denom = a0 - zeta_;
  u_.resize(n);
  u_[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) u_[k] = pivoted(k) / denom;
}

void HouseholderNullSpace::apply_z(std::span<const double> v,
                                   std::span<double> out) const {
  const std::size_t n = size();
  require_size(v.size(), n - 1, "apply_z: v");
  require_size(out.size(), n, "apply_z: out");
  // Pivoted coordinates: w = (0, v), result = w - tau u (u'w).
  double uw = 0.0;
  for (std::size_t k = 1; k < n; ++k) uw += u_[k] * v[k - 1];
  const double c = tau_ * uw;
  out[0] = -c;  // w_0 = 0, u_0 = 1
  for (std::size_t k = 1; k < n; ++k) out[k] = v[k - 1] - c * u_[k];
  if (pivot_ != 0) std::swap(out[0], out[pivot_]);
}

Vector HouseholderNullSpace::apply_z(std::span<const double> v) const {
  Vector out(size());
  apply_z(v, out);
  return out;
}

void HouseholderNullSpace::apply_zt(std::span<const double> w,
                                    std::span<double> out) const {
  const std::size_t n = size();
  require_size(w.size(), n, "apply_zt: w");
  require_size(out.size(), n - 1, "apply_zt: out");
  auto pivoted = [&](std::size_t k) {
    if (k == 0) return w[pivot_];
    if (k == pivot_) return w[0];
    return w[k];
  };
  double uw = pivoted(0);
  for (std::size_t k = 1; k < n; ++k) uw += u_[k] * pivoted(k);
  const double c = tau_ * uw;
  for (std::size_t k = 1; k < n; ++k) out[k - 1] = pivoted(k) - c * u_[k];
}

Vector HouseholderNullSpace::apply_zt(std::span<const double> w) const {
  Vector out(size() - 1);
  apply_zt(w, out);
  return out;
}

OrthoProjector::OrthoProjector(Vector a) : a_(std::move(a)) {
  require_nonzero(a_, "orthogonal projector");
  ata_ = dot(a_, a_);
}

Vector OrthoProjector::apply(std::span<const double> v) const {
  require_size(v.size(), a_.size(), "ortho_project: v");
  const double c = dot(a_, v) / ata_;
  Vector out(v.begin(), v.end());
  axpy(-c, a_, out);
  return out;
}

Vector ortho_project(const OrthoProjector& p, std::span<const double> v) {
  return p.apply(v);
}

Vector project_line_equality(std::span<const double> y,
                             std::span<const double> a, double b) {
  require_size(y.size(), a.size(), "project_line_equality: y");
  require_nonzero(a, "project_line_equality");
  const double c = (b - dot(a, y)) / dot(a, a);
  Vector z(y.begin(), y.end());
  axpy(c, a, z);
  return z;
}

Vector project_line_interval(std::span<const double> y,
                             std::span<const double> a, double b_lo,
                             double b_hi) {
  if (b_lo > b_hi) {
    throw Error(ErrorKind::kInvalidArgument, "project_line_interval: b_l > b_u");
  }
  const Vector zl = project_line_equality(y, a, b_lo);
  const Vector zu = project_line_equality(y, a, b_hi);
  Vector z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    z[i] = mid(std::min(zl[i], zu[i]), y[i], std::max(zl[i], zu[i]));
  }
  return z;
}

double feasible_step_cap(std::span<const double> x, std::span<const double> p,
                         std::span<const LinearInequality> rows) {
  require_size(p.size(), x.size(), "feasible_step_cap: p");
  double cap = kInf;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    require_size(row.a.size(), x.size(), "feasible_step_cap: row");
    const double ax = dot(row.a, x);
    const double slack = ax - row.rhs;
    const double scale = std::abs(row.rhs) + norm_inf(row.a) * norm_inf(x);
    if (slack < -1e-12 * std::max(1.0, scale)) {
      throw Error(ErrorKind::kInfeasiblePoint,
                  "feasible_step_cap: x violates row " + std::to_string(r));
    }
    const double ap = dot(row.a, p);
    if (ap < 0.0) cap = std::min(cap, std::max(0.0, (row.rhs - ax) / ap));
  }
  return cap;
}

double interval_step_cap(double ax, double ap, double b_lo, double b_hi) {
  if (ap > 0.0) return std::max(0.0, (b_hi - ax) / ap);
  if (ap < 0.0) return std::max(0.0, (b_lo - ax) / ap);
  return kInf;
}

}  // namespace knapsack
