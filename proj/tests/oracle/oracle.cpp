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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum Where { kFree = 0, kLower = 1, kUpper = 2 };

// Decodes pattern index p into base-3 digits.
void decode(std::size_t p, std::vector<int>& w) {
  for (auto& d : w) {
    d = static_cast<int>(p % 3);
    p /= 3;
  }
}

std::size_t pow3(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 3;
  return r;
}

double dist2(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return s;
}

double h_value(double lam, std::span<const double> y, const KnapsackSet& set,
               double b) {
  const auto l = set.lower();
  const auto u = set.upper();
  const auto a = set.a();
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    s += a[i] * std::max(l[i], std::min(y[i] - lam * a[i], u[i]));
  }
  return b - s;
}

Solution bisection(std::span<const double> y, const KnapsackSet& set, double b) {
  const auto l = set.lower();
  const auto u = set.upper();
  const auto a = set.a();
  double lo = kInf;
  double hi = -kInf;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (a[i] == 0.0) continue;
    const double p = (y[i] - l[i]) / a[i];
    const double q = (y[i] - u[i]) / a[i];
    lo = std::min({lo, p, q});
    hi = std::max({hi, p, q});
  }
  Solution s;
  if (lo > hi) {
    lo = hi = 0.0;
  }
  lo -= 1.0;
  hi += 1.0;
  for (int it = 0; it < 400 && lo < hi; ++it) {
    const double m = 0.5 * (lo + hi);
    if (m == lo || m == hi) break;
    if (h_value(m, y, set, b) < 0.0) lo = m; else hi = m;
  }
  s.multiplier = 0.5 * (lo + hi);
  s.x.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    s.x[i] = std::max(l[i], std::min(y[i] - s.multiplier * a[i], u[i]));
  }
  return s;
}

Solution enumerate_equality(std::span<const double> y, const KnapsackSet& set,
                            double b) {
  const std::size_t n = y.size();
  const auto l = set.lower();
  const auto u = set.upper();
  const auto a = set.a();
  double scale = 1.0 + std::abs(b);
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max({scale, std::abs(y[i]), std::abs(l[i]), std::abs(u[i])});
  }
  const double tol = 1e-12 * scale;

  std::vector<int> w(n);
  Solution best;
  double best_d = kInf;
  Vector x(n);
  for (std::size_t p = 0; p < pow3(n); ++p) {
    decode(p, w);
    double aa = 0.0;
    double ay = 0.0;
    double rest = b;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (w[i] == kLower) {
        x[i] = l[i];
        rest -= a[i] * l[i];
      } else if (w[i] == kUpper) {
        if (u[i] == l[i]) ok = false;  // same point as kLower
        x[i] = u[i];
        rest -= a[i] * u[i];
      } else {
        aa += a[i] * a[i];
        ay += a[i] * y[i];
      }
    }
    if (!ok) continue;
    double lam_lo = -kInf;
    double lam_hi = kInf;
    double lam = 0.0;
    if (aa > 0.0) {
      lam = (ay - rest) / aa;
      lam_lo = lam_hi = lam;
    } else {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == kFree) s += a[i] * y[i];
      }
      if (std::abs(rest - s) > tol * (1.0 + n)) continue;
    }
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (w[i] == kFree) {
        x[i] = y[i] - lam * a[i];
        ok = x[i] >= l[i] - tol && x[i] <= u[i] + tol;
        continue;
      }
      // lower: y - lam a <= l; upper: y - lam a >= u.
      const double bound = w[i] == kLower ? l[i] : u[i];
      const double sgn = w[i] == kLower ? 1.0 : -1.0;
      if (a[i] == 0.0) {
        ok = sgn * (y[i] - bound) <= tol;
        continue;
      }
      if (aa > 0.0) {
        ok = sgn * (y[i] - lam * a[i] - bound) <= tol;
        continue;
      }
      const double t = (y[i] - bound) / a[i];
      if ((sgn > 0) == (a[i] > 0)) {
        lam_lo = std::max(lam_lo, t);
      } else {
        lam_hi = std::min(lam_hi, t);
      }
    }
    if (!ok || lam_lo > lam_hi + tol) continue;
    if (aa == 0.0) {
      lam = std::isfinite(lam_lo) ? (std::isfinite(lam_hi) ? 0.5 * (lam_lo + lam_hi) : lam_lo)
                                  : (std::isfinite(lam_hi) ? lam_hi : 0.0);
    }
    const double d = dist2(x, y);
    if (d < best_d) {
      best_d = d;
      best.x = x;
      best.multiplier = lam;
      best.verified = true;
    }
  }
  if (!best.verified) return bisection(y, set, b);
  for (std::size_t i = 0; i < n; ++i) best.x[i] = std::max(l[i], std::min(best.x[i], u[i]));
  return best;
}

}  // namespace

Solution project_equality(std::span<const double> y, const KnapsackSet& set) {
  return enumerate_equality(y, set, set.b());
}

Solution project_interval(std::span<const double> y, const KnapsackSet& set) {
  const auto iv = set.interval();
  const auto l = set.lower();
  const auto u = set.upper();
  const auto a = set.a();
  const std::size_t n = y.size();
  Vector box(n);
  for (std::size_t i = 0; i < n; ++i) box[i] = std::max(l[i], std::min(y[i], u[i]));
  const double s = knapsack::dot(a, box);
  if (s >= iv.lo && s <= iv.hi) return Solution{box, 0.0, true};

  std::optional<Solution> best;
  double best_d = kInf;
  for (double b : {iv.lo, iv.hi}) {
    const KnapsackSet eq = set.with_rhs(knapsack::Equality{b});
    if (!knapsack::feasibility_equality(eq)) continue;
    Solution cand = enumerate_equality(y, eq, b);
    const double d = dist2(cand.x, y);
    if (d < best_d) {
      best_d = d;
      best = std::move(cand);
    }
  }
  return best.value_or(Solution{box, 0.0, false});
}

Solution project(std::span<const double> y, const KnapsackSet& set) {
  return set.is_equality() ? project_equality(y, set) : project_interval(y, set);
}

std::optional<Solution> qp(const Eigen::MatrixXd& H, std::span<const double> c,
                           const KnapsackSet& set) {
  const std::size_t n = set.size();
  const auto l = set.lower();
  const auto u = set.upper();
  const auto a = set.a();
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max({scale, std::abs(c[i]), std::abs(l[i]), std::abs(u[i])});
  }
  scale = std::max(scale, H.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;

  struct Row {
    int status;  // 0 inactive, 1 lower active, 2 upper active, 3 equality
    double target;
  };
  std::vector<Row> rows;
  if (set.is_equality()) {
    rows.push_back({3, set.b()});
  } else {
    rows.push_back({0, 0.0});
    rows.push_back({1, set.interval().lo});
    rows.push_back({2, set.interval().hi});
  }

  std::optional<Solution> best;
  double best_f = kInf;
  std::vector<int> w(n);
  Eigen::VectorXd x(n);
  for (std::size_t p = 0; p < pow3(n); ++p) {
    decode(p, w);
    std::vector<std::size_t> F;
    bool dup = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] == kFree) F.push_back(i);
      if (w[i] == kLower) x[i] = l[i];
      if (w[i] == kUpper) {
        x[i] = u[i];
        dup = dup || u[i] == l[i];
      }
    }
    if (dup) continue;
    const std::size_t m = F.size();
    for (const Row& row : rows) {
      const bool active = row.status != 0;
      const std::size_t k = m + (active ? 1 : 0);
      double lam = 0.0;
      if (k > 0) {
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k, k);
        Eigen::VectorXd r(k);
        for (std::size_t s = 0; s < m; ++s) {
          const std::size_t i = F[s];
          double rhs = -c[i];
          for (std::size_t j = 0; j < n; ++j) {
            if (w[j] != kFree) rhs -= H(i, j) * x[j];
          }
          r[s] = rhs;
          for (std::size_t t = 0; t < m; ++t) K(s, t) = H(i, F[t]);
          if (active) {
            K(s, m) = -a[i];
            K(m, s) = a[i];
          }
        }
        if (active) {
          double rest = row.target;
          for (std::size_t j = 0; j < n; ++j) {
            if (w[j] != kFree) rest -= a[j] * x[j];
          }
          r[m] = rest;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd sol = lu.solve(r);
        for (std::size_t s = 0; s < m; ++s) x[F[s]] = sol[s];
        if (active) lam = sol[m];
      } else if (active) {
        continue;
      }
      bool ok = true;
      for (std::size_t s = 0; s < m && ok; ++s) {
        const std::size_t i = F[s];
        ok = x[i] >= l[i] - tol && x[i] <= u[i] + tol;
      }
      if (!ok) continue;
      double ax = 0.0;
      for (std::size_t i = 0; i < n; ++i) ax += a[i] * x[i];
      if (row.status == 0) {
        const auto iv = set.interval();
        if (ax < iv.lo - tol || ax > iv.hi + tol) continue;
      }
      if (row.status == 1 && lam < -tol) continue;
      if (row.status == 2 && lam > tol) continue;
      const Eigen::VectorXd g = H * x + Eigen::Map<const Eigen::VectorXd>(c.data(), n);
      for (std::size_t i = 0; i < n && ok; ++i) {
        const double mu = g[i] - lam * a[i];
        if (w[i] == kLower) ok = mu >= -tol;
        if (w[i] == kUpper) ok = mu <= tol;
      }
      if (!ok) continue;
      const double f = 0.5 * x.dot(H * x) + x.dot(Eigen::Map<const Eigen::VectorXd>(c.data(), n));
      if (f < best_f) {
        best_f = f;
        Solution s;
        s.x.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.x[i] = std::max(l[i], std::min(x[i], u[i]));
        s.multiplier = lam;
        s.verified = true;
        best = std::move(s);
      }
    }
  }
  return best;
}

double KktReport::worst() const {
  return std::max({stationarity, sign_violation, box_violation, linear_violation});
}

KktReport kkt_certificate(std::span<const double> x, std::span<const double> g,
                          const KnapsackSet& set, double rel_tol) {
  const std::size_t n = set.size();
  const auto l = set.lower();
  const auto u = set.upper();
  const auto a = set.a();
  KktReport r;
  std::vector<int> w(n, kFree);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rel_tol * std::max({1.0, std::abs(l[i]), std::abs(u[i])});
    r.box_violation = std::max({r.box_violation, l[i] - x[i], x[i] - u[i]});
    if (std::abs(x[i] - l[i]) <= t) w[i] = kLower;
    else if (std::abs(u[i] - x[i]) <= t) w[i] = kUpper;
  }
  double ax = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ax += a[i] * x[i];
    scale += std::abs(a[i] * x[i]);
  }
  int row = 3;
  if (set.is_equality()) {
    r.linear_violation = std::abs(ax - set.b());
  } else {
    const auto iv = set.interval();
    r.linear_violation = std::max({0.0, iv.lo - ax, ax - iv.hi});
    const double t = rel_tol * (1.0 + scale);
    if (std::abs(ax - iv.lo) <= t) row = 1;
    else if (std::abs(ax - iv.hi) <= t) row = 2;
    else row = 0;
  }
  double lam = 0.0;
  if (row != 0) {
    double ag = 0.0;
    double aa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] != kFree) continue;
      ag += a[i] * g[i];
      aa += a[i] * a[i];
    }
    if (aa > 0.0) lam = ag / aa;
  }
  r.lambda = lam;
  if (row == 1) r.sign_violation = std::max(r.sign_violation, -lam);
  if (row == 2) r.sign_violation = std::max(r.sign_violation, lam);
  for (std::size_t i = 0; i < n; ++i) {
    const double mu = g[i] - lam * a[i];
    if (w[i] == kFree) r.stationarity = std::max(r.stationarity, std::abs(mu));
    if (w[i] == kLower) r.sign_violation = std::max(r.sign_violation, -mu);
    if (w[i] == kUpper) r.sign_violation = std::max(r.sign_violation, mu);
  }
  return r;
}

}  // namespace oracle
