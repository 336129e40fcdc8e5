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

#include "knapsack/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace knapsack {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

const char* to_string(HessianKind k) {
  return k == HessianKind::kDenseSpd ? "dense_spd" : "diagonal";
}

const char* to_string(SetKind k) {
  return k == SetKind::kEquality ? "equality" : "interval";
}

double QpProblem::hessian(std::size_t i, std::size_t j) const {
  if (kind == HessianKind::kDiagonal) return i == j ? h[i] : 0.0;
  return h[i * size() + j];
}

Vector QpProblem::hessian_times(std::span<const double> x) const {
  const std::size_t n = size();
  require_size(x.size(), n, "qp: x");
  Vector y(n, 0.0);
  if (kind == HessianKind::kDiagonal) {
    for (std::size_t i = 0; i < n; ++i) y[i] = h[i] * x[i];
    return y;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const double* row = h.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

double QpProblem::value(std::span<const double> x) const {
  const Vector hx = hessian_times(x);
  return 0.5 * dot(x, hx) + dot(c, x);
}

namespace {

void random_box(std::size_t n, Rng& rng, Vector& l, Vector& u, Vector& a) {
  l.resize(n);
  u.resize(n);
  a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    l[i] = rng.uniform(-1.0, 0.0);
    u[i] = l[i] + rng.uniform(0.1, 2.0);
    const double s = rng.uniform() < 0.5 ? -1.0 : 1.0;
    a[i] = s * rng.uniform(0.5, 1.5);
  }
}

Vector random_hessian(std::size_t n, Rng& rng, HessianKind kind) {
  if (kind == HessianKind::kDiagonal) {
    Vector h(n);
    for (auto& v : h) v = rng.uniform(0.5, 2.0);
    return h;
  }
  const std::size_t m = 2 * n;
  Vector b(m * n);
  for (auto& v : b) v = rng.uniform(-1.0, 1.0);
  Vector h(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += b[k * n + i] * b[k * n + j];
      h[i * n + j] = s;
      h[j * n + i] = s;
    }
    h[i * n + i] += static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  }
  return h;
}

double max_diagonal(const Vector& h, std::size_t n, HessianKind kind) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max(m, kind == HessianKind::kDiagonal ? h[i] : h[i * n + i]);
  }
  return m;
}

}  // namespace

KnapsackSet make_random_set(std::size_t n, Rng& rng, SetKind kind) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "random set: n must be >= 1");
  Vector l, u, a;
  random_box(n, rng, l, u, a);
  const KnapsackSet box(l, u, a, Equality{0.0});
  const AttainableRange r = attainable_range(box);
  const double w = r.max - r.min;
  if (kind == SetKind::kEquality) {
    return box.with_rhs(Equality{r.min + rng.uniform(0.1, 0.9) * w});
  }
  double t1 = rng.uniform(0.05, 0.95);
  double t2 = rng.uniform(0.05, 0.95);
  if (t1 > t2) std::swap(t1, t2);
  return box.with_rhs(Interval{r.min + t1 * w, r.min + t2 * w});
}

QpProblem make_random_qp(std::size_t n, std::uint64_t seed, HessianKind kind,
                         SetKind set_kind) {
  Rng rng(seed);
  KnapsackSet set = make_random_set(n, rng, set_kind);
  Vector h = random_hessian(n, rng, kind);
  const double scale = max_diagonal(h, n, kind);
  Vector c(n);
  for (auto& v : c) v = scale * rng.normal();
  return QpProblem{kind, std::move(h), std::move(c), std::move(set), seed};
}

PlantedQp make_planted_qp(std::size_t n, std::uint64_t seed, HessianKind kind,
                          double active_fraction) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "planted qp: n must be >= 1");
  Rng rng(seed);
  Vector l, u, a;
  random_box(n, rng, l, u, a);
  Vector x(n);
  Vector mu(n, 0.0);
  const std::size_t keep_free = rng.index(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rng.uniform();
    const double m = rng.uniform(0.5, 1.5);
    if (i != keep_free && r < 0.5 * active_fraction) {
      x[i] = l[i];
      mu[i] = m;
    } else if (i != keep_free && r < active_fraction) {
      x[i] = u[i];
      mu[i] = -m;
    } else {
      x[i] = l[i] + rng.uniform(0.2, 0.8) * (u[i] - l[i]);
    }
  }
  const double lambda = rng.normal();
  Vector h = random_hessian(n, rng, kind);
  QpProblem qp{kind, std::move(h), Vector(n), KnapsackSet(l, u, a, Equality{dot(a, x)}),
               seed};
  const Vector hx = qp.hessian_times(x);
  for (std::size_t i = 0; i < n; ++i) qp.c[i] = lambda * a[i] + mu[i] - hx[i];
  return PlantedQp{std::move(qp), std::move(x), lambda};
}

double QuadraticObjective::value(std::span<const double> x) {
  return qp_.value(x);
}

void QuadraticObjective::gradient(std::span<const double> x,
                                  std::span<double> g) {
  const Vector hx = qp_.hessian_times(x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = hx[i] + qp_.c[i];
}

double QuadraticObjective::value_and_gradient(std::span<const double> x,
                                              std::span<double> g) {
  const Vector hx = qp_.hessian_times(x);
  double f = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    f += x[i] * (0.5 * hx[i] + qp_.c[i]);
    g[i] = hx[i] + qp_.c[i];
  }
  return f;
}

double ProjectionObjective::value(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y_[i];
    s += d * d;
  }
  return 0.5 * s;
}

void ProjectionObjective::gradient(std::span<const double> x,
                                   std::span<double> g) {
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] - y_[i];
}

ProjectionObjective projection_problem(std::span<const double> y,
                                       const KnapsackSet& set) {
  require_size(y.size(), set.size(), "projection problem: y");
  return ProjectionObjective(Vector(y.begin(), y.end()));
}

double DoubleWellObjective::value(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double q = x[i] * x[i] - 1.0;
    s += 0.25 * q * q + c_[i] * x[i];
  }
  return s;
}

void DoubleWellObjective::gradient(std::span<const double> x,
                                   std::span<double> g) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = x[i] * (x[i] * x[i] - 1.0) + c_[i];
  }
}

double gradient_check(Objective& obj, std::span<const double> x, double h_rel) {
  const std::size_t n = x.size();
  Vector g(n);
  obj.eval_grad(x, g);
  Vector xp(x.begin(), x.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = h_rel * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    const double fp = obj.eval_f(xp);
    xp[i] = x[i] - h;
    const double fm = obj.eval_f(xp);
    xp[i] = x[i];
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(g[i] - fd) / std::max(1.0, std::abs(fd)));
  }
  return worst;
}

}  // namespace knapsack
