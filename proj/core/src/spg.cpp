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

#include "knapsack/spg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace knapsack {

namespace {

// a'(target - x), taken as exactly zero when both points lie on the same
// level of the linear row.
double row_change(const FeasibleRegion& region, std::span<const double> x,
                  std::span<const double> target) {
  if (region.box_only()) return 0.0;
  const KnapsackSet& set = region.set();
  if (set.is_equality()) return 0.0;
  const double ax = dot(set.a(), x);
  const double at = dot(set.a(), target);
  for (const double b : {set.interval().lo, set.interval().hi}) {
    if (std::abs(ax - b) <= linear_tolerance(set, x, b) &&
        std::abs(at - b) <= linear_tolerance(set, target, b)) {
      return 0.0;
    }
  }
  return at - ax;
}

// g'd with the component of g along a (fitted on the support of d) split
// off, so that a large row multiplier does not swamp the tangential part.
double tangent_dot(std::span<const double> g, std::span<const double> d,
                   const FeasibleRegion& region, double ad) {
  if (region.box_only()) return dot(g, d);
  const auto a = region.set().a();
  double aa = 0.0;
  double ag = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (d[i] == 0.0) continue;
    aa += a[i] * a[i];
    ag += a[i] * g[i];
  }
  if (aa == 0.0) return dot(g, d);
  const double mu = ag / aa;
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (d[i] != 0.0) s += (g[i] - mu * a[i]) * d[i];
  }
  return s + mu * ad;
}

}  // namespace

void SpgConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "spg: gamma must be in (0, 1)");
  }
  if (!(alpha_min > 0.0 && alpha_min < alpha_max)) {
    throw Error(ErrorKind::kInvalidArgument,
                "spg: need 0 < alpha_min < alpha_max");
  }
  if (memory < 1) {
    throw Error(ErrorKind::kInvalidArgument, "spg: memory must be >= 1");
  }
  if (!(sigma1 > 0.0 && sigma1 < sigma2 && sigma2 < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "spg: need 0 < sigma1 < sigma2 < 1");
  }
  if (!(sigma_neg_curv > 0.0) || !(tol >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "spg: sigma_neg_curv must be positive and tol non-negative");
  }
}

Vector scaled_projected_gradient(std::span<const double> x, double alpha,
                                 std::span<const double> grad,
                                 const FeasibleRegion& region) {
  require_size(x.size(), region.size(), "scaled_projected_gradient: x");
  require_size(grad.size(), region.size(), "scaled_projected_gradient: grad");
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - alpha * grad[i];
  Vector d = region.project(y);
  for (std::size_t i = 0; i < x.size(); ++i) d[i] -= x[i];
  return d;
}

Vector scaled_projected_gradient(std::span<const double> x, double alpha,
                                 std::span<const double> grad,
                                 const KnapsackSet& set) {
  return scaled_projected_gradient(x, alpha, grad, FeasibleRegion(set));
}

double bb_stepsize(std::span<const double> s, std::span<const double> y,
                   const SpgConfig& cfg) {
  require_size(y.size(), s.size(), "bb_stepsize: y");
  const double sty = dot(s, y);
  if (sty <= 0.0) return cfg.sigma_neg_curv;
  return std::clamp(dot(s, s) / sty, cfg.alpha_min, cfg.alpha_max);
}

LineSearchOutcome nonmonotone_linesearch(Objective& obj,
                                         std::span<const double> x, double fx,
                                         std::span<const double> target,
                                         double f_ref, double delta,
                                         const SpgConfig& cfg,
                                         const KnapsackSet* box,
                                         const SlopeFn* slope) {
  require_size(target.size(), x.size(), "nonmonotone_linesearch: target");
  if (!(delta < 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "nonmonotone_linesearch: direction is not a descent direction");
  }
  LineSearchOutcome out;
  out.x.assign(target.begin(), target.end());
  double alpha = 1.0;
  double best_alpha = 0.0;
  double best_f = fx;
  for (std::size_t k = 0; k <= cfg.max_backtracks; ++k) {
    if (k > 0) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        out.x[i] = x[i] + alpha * (target[i] - x[i]);
      }
      if (box) {
        const auto l = box->lower();
        const auto u = box->upper();
        for (std::size_t i = 0; i < x.size(); ++i) out.x[i] = mid(l[i], out.x[i], u[i]);
      }
    }
    const double f = obj.eval_f(out.x);
    ++out.evaluations;
    if (f < best_f) {
      best_f = f;
      best_alpha = alpha;
    }
    if (f <= f_ref + cfg.gamma * alpha * delta) {
      out.f = f;
      out.alpha = alpha;
      return out;
    }
    if (slope && std::abs(f - fx) <= 1e-12 * std::max(1.0, std::abs(fx))) {
      Vector g(x.size());
      obj.eval_grad(out.x, g);
      if ((*slope)(g) <= (2.0 * cfg.gamma - 1.0) * delta) {
        out.f = f;
        out.alpha = alpha;
        out.g = std::move(g);
        return out;
      }
    }
    const double denom = 2.0 * (f - fx - alpha * delta);
    const double trial = denom > 0.0 ? -delta * alpha * alpha / denom : -1.0;
    alpha = (trial >= cfg.sigma1 * alpha && trial <= cfg.sigma2 * alpha)
                ? trial
                : 0.5 * alpha;
  }
  Vector best(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    best[i] += best_alpha * (target[i] - x[i]);
  }
  throw LineSearchError("nonmonotone line search: too many backtracks",
                        best_alpha, std::move(best));
}

SpgSolver::SpgSolver(Objective& obj, const FeasibleRegion& region,
                     SpgConfig cfg)
    : obj_(obj), region_(region), cfg_(cfg) {
  cfg_.validate();
  require_size(obj.dimension(), region.size(), "spg: objective dimension");
}

void SpgSolver::reset(std::span<const double> x0) {
  require_size(x0.size(), region_.size(), "spg: x0");
  Vector x = region_.project(x0);
  Vector g(x.size());
  const double f = obj_.eval_f_and_grad(x, g);
  reset(x, f, g);
}

void SpgSolver::reset(std::span<const double> x, double fx,
                      std::span<const double> gx) {
  it_.x.assign(x.begin(), x.end());
  it_.fx = fx;
  it_.gx.assign(gx.begin(), gx.end());
  it_.s_prev.clear();
  it_.y_prev.clear();
  it_.history.assign(1, fx);
  iter_ = 0;
  refresh_d1();
  it_.alpha_bb = it_.norm_d1 > 0.0
                     ? std::clamp(1.0 / it_.norm_d1, cfg_.alpha_min, cfg_.alpha_max)
                     : 1.0;
}

void SpgSolver::refresh_d1() {
  it_.d1 = scaled_projected_gradient(it_.x, 1.0, it_.gx, region_);
  it_.norm_d1 = norm_inf(it_.d1);
}

SpgTraceRow SpgSolver::row() const {
  SpgTraceRow r;
  r.iter = iter_;
  r.f = it_.fx;
  r.norm_d1 = it_.norm_d1;
  r.alpha_bb = it_.alpha_bb;
  r.n_f = obj_.n_f();
  r.n_g = obj_.n_g();
  return r;
}

SpgTraceRow SpgSolver::step() {
  const std::size_t n = it_.x.size();
  Vector target(n);
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = it_.x[i] - it_.alpha_bb * it_.gx[i];
  }
  target = region_.project(target);
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = target[i] - it_.x[i];
  const double ad = row_change(region_, it_.x, target);
  const SlopeFn slope = [&](std::span<const double> g) {
    return tangent_dot(g, d, region_, ad);
  };
  const double delta = slope(it_.gx);

  SpgTraceRow r;
  if (!(delta < 0.0)) {
    // stationary up to roundoff
    r = row();
    r.f_ref = it_.fx;
    return r;
  }
  const double f_ref = *std::max_element(it_.history.begin(), it_.history.end());
  LineSearchOutcome ls = nonmonotone_linesearch(
      obj_, it_.x, it_.fx, target, f_ref, delta, cfg_, &region_.set(), &slope);

  const bool slope_accepted = !ls.g.empty();
  Vector g_new = std::move(ls.g);
  if (g_new.empty()) {
    g_new.resize(n);
    obj_.eval_grad(ls.x, g_new);
  }
  it_.s_prev.resize(n);
  it_.y_prev.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    it_.s_prev[i] = ls.x[i] - it_.x[i];
    it_.y_prev[i] = g_new[i] - it_.gx[i];
  }
  it_.x = std::move(ls.x);
  it_.fx = ls.f;
  it_.gx = std::move(g_new);
  it_.history.push_back(it_.fx);
  while (it_.history.size() > cfg_.memory) it_.history.pop_front();
  if (norm_inf(it_.s_prev) > 0.0) {
    it_.alpha_bb = bb_stepsize(it_.s_prev, it_.y_prev, cfg_);
  }
  ++iter_;
  refresh_d1();

  r = row();
  r.f_ref = f_ref;
  r.delta = delta;
  r.step = ls.alpha;
  r.slope_accepted = slope_accepted;
  return r;
}

SpgResult spg_solve(Objective& obj, const FeasibleRegion& region,
                    std::span<const double> x0, const SpgConfig& cfg) {
  SpgSolver solver(obj, region, cfg);
  solver.reset(x0);
  SpgResult res;
  SpgTraceRow first;
  first.iter = 0;
  first.f = solver.iterate().fx;
  first.norm_d1 = solver.iterate().norm_d1;
  first.alpha_bb = solver.iterate().alpha_bb;
  first.n_f = obj.n_f();
  first.n_g = obj.n_g();
  first.f_ref = first.f;
  res.trace.push_back(first);
  while (!solver.converged() && solver.iterations() < cfg.max_iter) {
    const double f_before = solver.iterate().fx;
    SpgTraceRow r = solver.step();
    if (r.step == 0.0 && r.f == f_before) break;  // stalled at roundoff
    res.trace.push_back(r);
  }
  const auto& it = solver.iterate();
  res.x = it.x;
  res.f = it.fx;
  res.norm_d1 = it.norm_d1;
  res.iterations = solver.iterations();
  res.status = solver.converged() ? SpgStatus::kConverged : SpgStatus::kMaxIterations;
  return res;
}

void write_spg_trace_csv(std::ostream& os, std::span<const SpgTraceRow> rows) {
  const auto old = os.precision(17);
  os << "iter,f,norm_d1,alpha_bb,n_f,n_g\n";
  for (const auto& r : rows) {
    os << r.iter << ',' << r.f << ',' << r.norm_d1 << ',' << r.alpha_bb << ','
       << r.n_f << ',' << r.n_g << '\n';
  }
  os.precision(old);
}

}  // namespace knapsack
