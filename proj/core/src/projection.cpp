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

#include "knapsack/projection.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace knapsack {

namespace {

constexpr double kEpsM = std::numeric_limits<double>::epsilon();

// Plain or Neumaier-compensated running sum.
class Accumulator {
 public:
  explicit Accumulator(Summation mode) : compensated_(mode == Summation::kCompensated) {}

  void add(double v) {
    if (!compensated_) {
      sum_ += v;
      return;
    }
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  bool compensated_;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Term {
  double a;
  double y;
  double l;
  double u;
};

// s(lambda) = sum_i a_i mid(l_i, y_i - lambda a_i, u_i) over indices with
// a_i != 0. Components fixed over the current bracket are folded into a
// scalar and dropped from later passes.
class WorkingSet {
 public:
  WorkingSet(std::span<const double> y, const KnapsackSet& set,
             const ProjectionOptions& opts)
      : summation_(opts.summation), freeze_(opts.freeze) {
    const auto a = set.a();
    const auto l = set.lower();
    const auto u = set.upper();
    terms_.reserve(a.size());
    Accumulator smax(summation_);
    Accumulator smin(summation_);
    lambda_left_ = std::numeric_limits<double>::infinity();
    lambda_right_ = -std::numeric_limits<double>::infinity();
    AttainableRange range;
    for (std::size_t i = 0; i < a.size(); ++i) {
      // Same sums as attainable_range(), folded into this pass.
      const double ap = std::max(a[i], 0.0);
      const double am = std::min(a[i], 0.0);
      range.min += u[i] * am + l[i] * ap;
      range.max += u[i] * ap + l[i] * am;
      if (!std::isfinite(y[i])) {
        throw Error(ErrorKind::kNonFinite,
                    "projection: y[" + std::to_string(i) + "] is not finite");
      }
      if (a[i] == 0.0) continue;
      const double blo = (y[i] - l[i]) / a[i];
      const double bhi = (y[i] - u[i]) / a[i];
      lambda_left_ = std::min({lambda_left_, blo, bhi});
      lambda_right_ = std::max({lambda_right_, blo, bhi});
      if (a[i] > 0.0) {
        smax.add(a[i] * u[i]);
        smin.add(a[i] * l[i]);
      } else {
        smax.add(a[i] * l[i]);
        smin.add(a[i] * u[i]);
      }
      terms_.push_back({a[i], y[i], l[i], u[i]});
    }
    if (terms_.empty()) {
      lambda_left_ = lambda_right_ = 0.0;
    }
    s_left_ = smax.value();
    s_right_ = smin.value();
    const bool feasible =
        set.is_equality()
            ? range.min <= set.b() && set.b() <= range.max
            : set.interval().lo <= range.max && range.min <= set.interval().hi;
    if (!feasible) require_feasible(set);
  }

  bool empty() const { return terms_.empty() && frozen_count_ == 0; }
  double lambda_left() const { return lambda_left_; }
  double lambda_right() const { return lambda_right_; }
  // s at lambda_left (every component at its maximizing bound) and at
  // lambda_right.
  double s_left() const { return s_left_; }
  double s_right() const { return s_right_; }
  int evals() const { return evals_; }

  // Evaluates s(lambda) for lambda in [lo, hi], where the root is known to
  // lie in [lo, hi].
  double eval(double lambda, double lo, double hi) {
    ++evals_;
    Accumulator sum(summation_);
    double mag = 0.0;
    if (!freeze_) {
      for (const Term& t : terms_) {
        const double v = t.a * mid(t.l, t.y - lambda * t.a, t.u);
        sum.add(v);
        mag += std::abs(v);
      }
      magnitude_ = mag;
      return sum.value();
    }
    Accumulator frozen(summation_);
    frozen.add(frozen_sum_);
    std::size_t keep = 0;
    double fmag = 0.0;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      const Term t = terms_[k];
      // x_i(lambda) is monotone between its values at the bracket ends, and
      // fl(y - lambda a) is monotone in lambda, so these tests are exact.
      const double at_lo = t.y - lo * t.a;
      const double at_hi = t.y - hi * t.a;
      const bool fixed = (std::min(at_lo, at_hi) >= t.u) | (std::max(at_lo, at_hi) <= t.l);
      const double v = t.a * mid(t.l, t.y - lambda * t.a, t.u);
      frozen.add(fixed ? v : 0.0);
      sum.add(fixed ? 0.0 : v);
      fmag += fixed ? std::abs(v) : 0.0;
      mag += fixed ? 0.0 : std::abs(v);
      if (keep != k) terms_[keep] = t;
      keep += fixed ? 0 : 1;
    }
    frozen_mag_ += fmag;
    frozen_count_ += terms_.size() - keep;
    terms_.resize(keep);
    frozen_sum_ = frozen.value();
    magnitude_ = mag + frozen_mag_;
    return sum.value() + frozen_sum_;
  }

  // sum |a_i x_i| at the last evaluated lambda.
  double magnitude() const { return magnitude_; }

 private:
  Summation summation_;
  bool freeze_;
  std::vector<Term> terms_;
  double frozen_sum_ = 0.0;
  double frozen_mag_ = 0.0;
  double magnitude_ = 0.0;
  std::size_t frozen_count_ = 0;
  double lambda_left_ = 0.0;
  double lambda_right_ = 0.0;
  double s_left_ = 0.0;
  double s_right_ = 0.0;
  int evals_ = 0;
};

struct Sample {
  double lambda;
  double s;  // a'x(lambda)
};

// Brent-style zero of h(lambda) = b - s(lambda) on [lo.lambda, hi.lambda],
// with h(lo) <= 0 <= h(hi).
double solve_root(WorkingSet& ws, double b, Sample lo, Sample hi,
                  const ProjectionOptions& opts, std::vector<Sample>* record,
                  BreakpointSolverState& st) {
  const double eps = opts.eps;
  st.eps = eps;
  st.eps_machine = kEpsM;

  double best = lo.lambda, h_best = b - lo.s;
  double contra = hi.lambda, h_contra = b - hi.s;
  st.lambda_a = st.lambda_c = contra;
  st.lambda_b = best;
  st.h_a = st.h_c = h_contra;
  st.h_b = h_best;
  if (h_best == 0.0) return best;
  if (h_contra == 0.0) return contra;
  if (best == contra) return best;

  double prev = contra, h_prev = h_contra;
  double noise = 0.0;  // rounding level of the last h evaluation
  double step = contra - best;
  double pq_prev = step;

  for (;;) {
    if ((h_best > 0.0 && h_contra > 0.0) || (h_best < 0.0 && h_contra < 0.0)) {
      contra = prev;
      h_contra = h_prev;
      step = pq_prev = best - prev;
    }
    if (std::abs(h_contra) < std::abs(h_best)) {
      prev = best;
      best = contra;
      contra = prev;
      h_prev = h_best;
      h_best = h_contra;
      h_contra = h_prev;
    }
    st.lambda_a = prev;
    st.lambda_b = best;
    st.lambda_c = contra;
    st.h_a = h_prev;
    st.h_b = h_best;
    st.h_c = h_contra;
    st.pq_prev = pq_prev;
    st.eval_count = ws.evals();
    if (opts.observer) opts.observer(st);

    const double tol = 2.0 * kEpsM * std::abs(best) + 0.5 * eps;
    const double half = 0.5 * (contra - best);
    if (std::abs(half) <= tol || std::abs(h_best) <= noise) return best;

    if (std::abs(pq_prev) >= tol && std::abs(h_prev) > std::abs(h_best)) {
      const double s = h_best / h_prev;
      double p;
      double q;
      if (prev == contra) {
        // Two distinct points: secant step.
        p = 2.0 * half * s;
        q = 1.0 - s;
      } else {
        const double t = h_prev / h_contra;
        const double r = h_best / h_contra;
        p = s * (2.0 * half * t * (t - r) - (best - prev) * (r - 1.0));
        q = (t - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      const bool reject = p >= (2.0 / 3.0) * std::abs(q * half) ||
                          (!opts.minimal_step && p <= eps * std::abs(q)) ||
                          p >= 0.5 * std::abs(pq_prev * q);
      if (!reject) {
        pq_prev = step;
        step = p / q;
      } else {
        step = pq_prev = half;
      }
    } else {
      step = pq_prev = half;
    }

    const double old_best = best;
    prev = best;
    h_prev = h_best;
    best += (std::abs(step) > tol) ? step : std::copysign(tol, half);
    const double s_new = ws.eval(best, std::min(old_best, contra),
                                 std::max(old_best, contra));
    h_best = b - s_new;
    noise = kEpsM * (ws.magnitude() + std::abs(b));
    if (record) record->push_back({best, s_new});
  }
}

MultiplierResult solve_equality(WorkingSet& ws, double b, const ProjectionOptions& opts,
                                std::vector<Sample>* record) {
  MultiplierResult res;
  if (ws.empty()) {
    res.lambda = 0.0;
    return res;
  }
  const Sample lo{ws.lambda_left(), ws.s_left()};
  const Sample hi{ws.lambda_right(), ws.s_right()};
  if (record) {
    record->push_back(lo);
    record->push_back(hi);
  }
  res.lambda = solve_root(ws, b, lo, hi, opts, record, res.state);
  res.eval_count = ws.evals();
  res.state.eval_count = res.eval_count;
  return res;
}

void check_inputs(std::span<const double> y, const KnapsackSet& set,
                  const ProjectionOptions& opts) {
  require_size(y.size(), set.size(), "projection: y");
  if (!(opts.eps > kEpsM)) {
    throw Error(ErrorKind::kInvalidArgument,
                "projection: eps must exceed machine epsilon");
  }
}

Vector clamp_shift(std::span<const double> y, const KnapsackSet& set,
                   double lambda) {
  const auto a = set.a();
  const auto l = set.lower();
  const auto u = set.upper();
  Vector z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    z[i] = mid(l[i], y[i] - lambda * a[i], u[i]);
  }
  return z;
}

}  // namespace

BreakpointData compute_breakpoints(std::span<const double> y,
                                   const KnapsackSet& set) {
  require_size(y.size(), set.size(), "compute_breakpoints: y");
  const auto a = set.a();
  const auto l = set.lower();
  const auto u = set.upper();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  BreakpointData d;
  d.lambda_lo.assign(y.size(), nan);
  d.lambda_hi.assign(y.size(), nan);
  d.lambda_left = std::numeric_limits<double>::infinity();
  d.lambda_right = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (a[i] == 0.0) continue;
    d.empty = false;
    d.lambda_lo[i] = (y[i] - l[i]) / a[i];
    d.lambda_hi[i] = (y[i] - u[i]) / a[i];
    d.lambda_left = std::min({d.lambda_left, d.lambda_lo[i], d.lambda_hi[i]});
    d.lambda_right = std::max({d.lambda_right, d.lambda_lo[i], d.lambda_hi[i]});
  }
  if (d.empty) d.lambda_left = d.lambda_right = 0.0;
  return d;
}

void freeze_components(FreezeTable& table, const BreakpointData& data,
                       const KnapsackSet& set, double lambda_l,
                       double lambda_r) {
  require_size(table.state.size(), set.size(), "freeze_components");
  const auto a = set.a();
  const auto l = set.lower();
  const auto u = set.upper();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (table.state[i] != Frozen::kFree || a[i] == 0.0) continue;
    Frozen f = Frozen::kFree;
    if (a[i] > 0.0) {
      if (lambda_r <= data.lambda_hi[i]) {
        f = Frozen::kAtUpper;
      } else if (lambda_l >= data.lambda_lo[i]) {
        f = Frozen::kAtLower;
      }
    } else {
      // x_i(lambda) is nondecreasing for a_i < 0.
      if (lambda_l >= data.lambda_hi[i]) {
        f = Frozen::kAtUpper;
      } else if (lambda_r <= data.lambda_lo[i]) {
        f = Frozen::kAtLower;
      }
    }
    if (f == Frozen::kFree) continue;
    table.state[i] = f;
    table.offset += a[i] * (f == Frozen::kAtUpper ? u[i] : l[i]);
    ++table.frozen_count;
  }
}

double h_eval(double lambda, std::span<const double> y, const KnapsackSet& set,
              double b, const FreezeTable* table) {
  require_size(y.size(), set.size(), "h_eval: y");
  const auto a = set.a();
  const auto l = set.lower();
  const auto u = set.upper();
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (table && table->state[i] != Frozen::kFree) continue;
    s += a[i] * mid(l[i], y[i] - lambda * a[i], u[i]);
  }
  if (table) s += table->offset;
  return b - s;
}

MultiplierResult find_multiplier(std::span<const double> y,
                                 const KnapsackSet& set,
                                 const ProjectionOptions& opts) {
  check_inputs(y, set, opts);
  WorkingSet ws(y, set, opts);
  return solve_equality(ws, set.b(), opts, nullptr);
}

ProjectionResult project_equality(std::span<const double> y,
                                  const KnapsackSet& set,
                                  const ProjectionOptions& opts) {
  const MultiplierResult m = find_multiplier(y, set, opts);
  return {clamp_shift(y, set, m.lambda), m.lambda, m.eval_count};
}

ProjectionResult project_interval(std::span<const double> y,
                                  const KnapsackSet& set,
                                  const ProjectionOptions& opts) {
  check_inputs(y, set, opts);
  const Interval iv = set.interval();
  if (opts.interval_shortcut) {
    Vector x0 = clamp_to_box(set, y);
    const double s0 = dot(set.a(), x0);
    if (iv.lo <= s0 && s0 <= iv.hi) return {std::move(x0), 0.0, 0};
  }

  WorkingSet ws(y, set, opts);
  if (iv.lo == iv.hi) {
    const MultiplierResult m = solve_equality(ws, iv.hi, opts, nullptr);
    return {clamp_shift(y, set, m.lambda), m.lambda, m.eval_count};
  }

  // The attainable range may overlap [b_l, b_u] only partially; clip each
  // side to it so both equality subproblems are feasible.
  const double b_hi = std::min(iv.hi, ws.s_left());
  const double b_lo = std::max(iv.lo, ws.s_right());

  // Shares the setup pass (breakpoint extremes, endpoint values) with the
  // upper solve.
  WorkingSet ws_lower = ws;
  std::vector<Sample> trail;
  const MultiplierResult upper = solve_equality(ws, b_hi, opts, &trail);

  double lambda_lower = upper.lambda;
  int evals = upper.eval_count;
  if (!ws.empty()) {
    // Reuse the b_u trajectory: h_lower(lambda) = h_upper(lambda) + b_l - b_u.
    Sample lo{ws.lambda_left(), ws.s_left()};
    Sample hi{ws.lambda_right(), ws.s_right()};
    for (const Sample& p : trail) {
      if (b_lo - p.s <= 0.0 && p.lambda > lo.lambda) lo = p;
      if (b_lo - p.s >= 0.0 && p.lambda < hi.lambda) hi = p;
    }
    MultiplierResult lower;
    lambda_lower = solve_root(ws_lower, b_lo, lo, hi, opts, nullptr, lower.state);
    evals += ws_lower.evals();
  }

  const Vector x_upper = clamp_shift(y, set, upper.lambda);
  const Vector x_lower = clamp_shift(y, set, lambda_lower);
  ProjectionResult res;
  res.z.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    // x_L <= x_U holds only where a_i > 0; take the true median.
    const double lo = std::min(x_lower[i], x_upper[i]);
    const double hi = std::max(x_lower[i], x_upper[i]);
    res.z[i] = mid(lo, y[i], hi);
  }
  res.lambda = mid(upper.lambda, 0.0, lambda_lower);
  res.eval_count = evals;
  return res;
}

ProjectionResult project(std::span<const double> y, const KnapsackSet& set,
                         const ProjectionOptions& opts) {
  return set.is_equality() ? project_equality(y, set, opts)
                           : project_interval(y, set, opts);
}

}  // namespace knapsack
