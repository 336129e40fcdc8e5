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

#include "knapsack/rcgd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace knapsack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cubic_min(const WolfePoint& p, const WolfePoint& q) {
  const double lo = std::min(p.alpha, q.alpha);
  const double hi = std::max(p.alpha, q.alpha);
  const double w = hi - lo;
  const double d1 = p.dphi + q.dphi - 3.0 * (p.phi - q.phi) / (p.alpha - q.alpha);
  const double disc = d1 * d1 - p.dphi * q.dphi;
  double a = 0.5 * (lo + hi);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), q.alpha - p.alpha);
    const double t = q.alpha - (q.alpha - p.alpha) * (q.dphi + d2 - d1) /
                                   (q.dphi - p.dphi + 2.0 * d2);
    if (std::isfinite(t)) a = t;
  }
  return std::clamp(a, lo + 0.1 * w, hi - 0.1 * w);
}

}  // namespace

const char* to_string(LinearState s) {
  switch (s) {
    case LinearState::kEqualityActive: return "equality_active";
    case LinearState::kIntervalInactive: return "interval_inactive";
    case LinearState::kIntervalLowerActive: return "interval_lower_active";
    case LinearState::kIntervalUpperActive: return "interval_upper_active";
    case LinearState::kNoRow: return "no_row";
  }
  return "?";
}

const char* to_string(RcgdStatus s) {
  switch (s) {
    case RcgdStatus::kConverged: return "converged";
    case RcgdStatus::kBoundHit: return "bound_hit";
    case RcgdStatus::kLinearHit: return "linear_hit";
    case RcgdStatus::kRestartRequested: return "restart_requested";
    case RcgdStatus::kMaxIterations: return "max_iterations";
  }
  return "?";
}

ReducedSpace::ReducedSpace(const KnapsackSet& set,
                           std::span<const double> anchor,
                           IndexPartition part, LinearState state)
    : set_(&set),
      anchor_(anchor.begin(), anchor.end()),
      part_(std::move(part)),
      state_(state),
      rhs_(std::numeric_limits<double>::quiet_NaN()) {
  require_size(anchor.size(), set.size(), "reduced space: anchor");
  require_size(part_.size(), set.size(), "reduced space: partition");
  switch (state) {
    case LinearState::kEqualityActive:
      rhs_ = set.b();
      break;
    case LinearState::kIntervalLowerActive:
      rhs_ = set.interval().lo;
      break;
    case LinearState::kIntervalUpperActive:
      rhs_ = set.interval().hi;
      break;
    case LinearState::kIntervalInactive:
      set.interval();
      break;
    case LinearState::kNoRow:
      break;
  }
  const std::size_t nf = part_.inactive.size();
  reduced_size_ = nf;
  if (!std::isnan(rhs_) && nf > 0) {
    Vector af = shrink(set.a(), part_);
    if (norm_inf(af) > 0.0) {
      nullspace_.emplace(af);
      reduced_size_ = nf - 1;
    }
  }
}

void ReducedSpace::lift_direction(std::span<const double> d,
                                  std::span<double> out) const {
  require_size(d.size(), reduced_size_, "lift: v");
  require_size(out.size(), set_->size(), "lift: out");
  std::fill(out.begin(), out.end(), 0.0);
  const auto& free = part_.inactive;
  if (nullspace_) {
    Vector zf(free.size());
    nullspace_->apply_z(d, zf);
    for (std::size_t k = 0; k < free.size(); ++k) out[free[k]] = zf[k];
  } else {
    for (std::size_t k = 0; k < free.size(); ++k) out[free[k]] = d[k];
  }
}

Vector ReducedSpace::lift_direction(std::span<const double> d) const {
  Vector out(set_->size());
  lift_direction(d, out);
  return out;
}

void ReducedSpace::lift(std::span<const double> v, std::span<double> out) const {
  lift_direction(v, out);
  const auto l = set_->lower();
  const auto u = set_->upper();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += anchor_[i];
  for (std::size_t i : part_.inactive) out[i] = mid(l[i], out[i], u[i]);
  for (std::size_t i : part_.active) out[i] = anchor_[i];
}

Vector ReducedSpace::lift(std::span<const double> v) const {
  Vector out(set_->size());
  lift(v, out);
  return out;
}

Vector ReducedSpace::reduce_gradient(std::span<const double> g_full) const {
  require_size(g_full.size(), set_->size(), "reduce_gradient: g");
  Vector gf = shrink(g_full, part_);
  if (!nullspace_) return gf;
  return nullspace_->apply_zt(gf);
}

BoxCap step_cap_box_index(std::span<const double> x,
                          std::span<const double> p, const KnapsackSet& set,
                          const IndexPartition& part) {
  require_size(x.size(), set.size(), "step_cap_box: x");
  require_size(p.size(), set.size(), "step_cap_box: p");
  const auto l = set.lower();
  const auto u = set.upper();
  BoxCap cap{kInf, 0};
  for (std::size_t i : part.inactive) {
    double t = kInf;
    if (p[i] > 0.0) {
      t = (u[i] - x[i]) / p[i];
    } else if (p[i] < 0.0) {
      t = (l[i] - x[i]) / p[i];
    }
    if (t < cap.alpha) {
      cap.alpha = std::max(t, 0.0);
      cap.index = i;
    }
  }
  return cap;
}

double step_cap_box(std::span<const double> x, std::span<const double> p,
                    const KnapsackSet& set, const IndexPartition& part) {
  return step_cap_box_index(x, p, set, part).alpha;
}

Vector cg_direction(const CgState& st, double eta) {
  const std::size_t m = st.g.size();
  Vector d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = -st.g[i];
  if (st.restart_flag || st.d_prev.size() != m || st.g_prev.size() != m) {
    return d;
  }
  Vector y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = st.g[i] - st.g_prev[i];
  const double dy = dot(st.d_prev, y);
  if (!(dy != 0.0) || !std::isfinite(dy)) return d;
  const double yy = dot(y, y);
  const double beta_n =
      (dot(y, st.g) - 2.0 * yy * dot(st.d_prev, st.g) / dy) / dy;
  const double eta_k =
      -1.0 / (norm2(st.d_prev) * std::min(eta, norm2(st.g_prev)));
  const double beta = std::max(beta_n, eta_k);
  if (!std::isfinite(beta)) return d;
  axpy(beta, st.d_prev, d);
  const double gg = dot(st.g, st.g);
  if (!(dot(st.g, d) <= -1e-3 * gg)) {
    for (std::size_t i = 0; i < m; ++i) d[i] = -st.g[i];
  }
  return d;
}

WolfeResult wolfe_linesearch(const LineFunction& phi, double phi0,
                             double dphi0, double alpha_cap,
                             double alpha_init, const WolfeConfig& cfg) {
  if (!(dphi0 < 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "wolfe line search: phi'(0) must be negative");
  }
  if (!(alpha_cap > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "wolfe line search: cap must be positive");
  }
  int evals = 0;
  const WolfePoint origin{0.0, phi0, dphi0};
  WolfePoint best = origin;
  auto eval = [&](double a) {
    if (evals >= cfg.max_evaluations) {
      throw LineSearchError("wolfe line search: evaluation limit", best.alpha);
    }
    ++evals;
    WolfePoint p = phi(a);
    p.alpha = a;
    if (p.phi < best.phi) best = p;
    return p;
  };
  const double eps_f = cfg.approx_eps * std::max(1.0, std::abs(phi0));
  auto armijo = [&](const WolfePoint& p) {
    if (p.phi <= phi0 + cfg.delta * p.alpha * dphi0) return true;
    return p.phi <= phi0 + eps_f && p.dphi <= (2.0 * cfg.delta - 1.0) * dphi0;
  };
  auto curvature = [&](const WolfePoint& p) {
    return p.dphi >= cfg.sigma * dphi0;
  };
  auto done = [&](const WolfePoint& p) {
    return WolfeResult{p.alpha, p.phi, p.dphi, p.alpha >= alpha_cap, evals};
  };

  double a0 = std::min(alpha_init > 0.0 ? alpha_init : 1.0, alpha_cap);
  WolfePoint cur = eval(a0);

  if (cur.dphi > dphi0) {
    const double as = a0 * dphi0 / (dphi0 - cur.dphi);
    if (std::isfinite(as) && as > 0.0 && as <= alpha_cap &&
        std::abs(as - a0) > 1e-12 * a0) {
      const WolfePoint sec = eval(as);
      if (armijo(sec) && curvature(sec)) return done(sec);
    }
  }

  auto zoom = [&](WolfePoint lo, WolfePoint hi) -> WolfeResult {
    for (;;) {
      if (std::abs(hi.alpha - lo.alpha) <=
          4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi.alpha)) {
        if (lo.alpha > 0.0) return done(lo);
        throw LineSearchError("wolfe line search: interval collapsed",
                              best.alpha);
      }
      const WolfePoint p = eval(cubic_min(lo, hi));
      if (!armijo(p) || p.phi >= lo.phi) {
        hi = p;
      } else {
        if (curvature(p)) return done(p);
        if (p.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = p;
      }
    }
  };

  WolfePoint prev = origin;
  for (bool first = true;; first = false) {
    if (!armijo(cur) || (!first && cur.phi >= prev.phi)) return zoom(prev, cur);
    if (curvature(cur)) return done(cur);
    if (cur.alpha >= alpha_cap) return done(cur);
    prev = cur;
    cur = eval(std::min(alpha_cap, 4.0 * cur.alpha));
  }
}

RcgdResult rcgd_solve(Objective& obj, const ReducedSpace& rs,
                      const RcgdConfig& cfg) {
  Vector g(rs.set().size());
  const double f = obj.eval_f_and_grad(rs.anchor(), g);
  return rcgd_solve(obj, rs, f, g, cfg);
}

RcgdResult rcgd_solve(Objective& obj, const ReducedSpace& rs, double f0,
                      std::span<const double> g0, const RcgdConfig& cfg) {
  const KnapsackSet& set = rs.set();
  const std::size_t n = set.size();
  const std::size_t m = rs.reduced_size();
  require_size(g0.size(), n, "rcgd: g0");
  require_size(obj.dimension(), n, "rcgd: objective dimension");

  RcgdResult res;
  res.x.assign(rs.anchor().begin(), rs.anchor().end());
  res.f = f0;
  res.g.assign(g0.begin(), g0.end());

  Vector v(m, 0.0);
  Vector gr = rs.reduce_gradient(res.g);
  auto face_norm = [&](const Vector& r) { return norm_inf(rs.lift_direction(r)); };
  res.norm_gred = face_norm(gr);
  res.trace.push_back({0, res.f, res.norm_gred, 0.0, CapKind::kNone});

  CgState st;
  double alpha_prev = 0.0;
  double dphi_prev = 0.0;
  const auto a = set.a();
  const auto l = set.lower();
  const auto u = set.upper();

  for (std::size_t iter = 0;; ++iter) {
    res.iterations = iter;
    if (cfg.monitor) {
      const RcgdVerdict verdict = cfg.monitor(res.x, res.g, res.norm_gred);
      if (verdict == RcgdVerdict::kStop) {
        res.status = RcgdStatus::kConverged;
        return res;
      }
      if (verdict == RcgdVerdict::kRestart) {
        res.status = RcgdStatus::kRestartRequested;
        return res;
      }
    }
    if (m == 0 || res.norm_gred <= cfg.tol) {
      res.status = RcgdStatus::kConverged;
      return res;
    }
    if (iter >= cfg.max_iter) {
      res.status = RcgdStatus::kMaxIterations;
      return res;
    }

    st.g = gr;
    Vector d = cg_direction(st, cfg.eta);
    double dphi0 = dot(gr, d);
    if (!(dphi0 < 0.0)) {
      for (std::size_t i = 0; i < m; ++i) d[i] = -gr[i];
      dphi0 = -dot(gr, gr);
    }
    const Vector p = rs.lift_direction(d);

    const BoxCap box = step_cap_box_index(res.x, p, set, rs.part());
    double cap = box.alpha;
    CapKind kind = CapKind::kBox;
    LinearSide side = LinearSide::kLower;
    if (rs.linear_state() == LinearState::kIntervalInactive) {
      const auto iv = set.interval();
      const double ap = dot(a, p);
      const double lin = interval_step_cap(dot(a, res.x), ap, iv.lo, iv.hi);
      if (lin < cap) {
        cap = lin;
        kind = CapKind::kLinear;
        side = ap > 0.0 ? LinearSide::kUpper : LinearSide::kLower;
      }
    }
    if (!std::isfinite(cap)) kind = CapKind::kNone;

    auto finish_hit = [&](Vector x_new) {
      if (kind == CapKind::kBox) {
        const std::size_t i = box.index;
        x_new[i] = p[i] > 0.0 ? u[i] : l[i];
        res.hit_index = i;
        res.status = RcgdStatus::kBoundHit;
      } else {
        res.hit_side = side;
        res.status = RcgdStatus::kLinearHit;
      }
      res.x = std::move(x_new);
      res.f = obj.eval_f_and_grad(res.x, res.g);
      res.norm_gred = face_norm(rs.reduce_gradient(res.g));
      res.iterations = iter + 1;
      res.trace.push_back({iter + 1, res.f, res.norm_gred, cap, kind});
      return res;
    };

    const double scale = std::max(1.0, norm_inf(res.x));
    if (kind != CapKind::kNone && cap * norm_inf(p) <= 1e-12 * scale) {
      Vector x_new(n);
      Vector vt = v;
      axpy(cap, d, vt);
      rs.lift(vt, x_new);
      return finish_hit(std::move(x_new));
    }

    struct Trial {
      double alpha;
      Vector x;
      double f;
      Vector g;
    };
    std::vector<Trial> trials;
    auto line = [&](double alpha) {
      Trial t{alpha, Vector(n), 0.0, Vector(n)};
      Vector vt = v;
      axpy(alpha, d, vt);
      rs.lift(vt, t.x);
      t.f = obj.eval_f_and_grad(t.x, t.g);
      WolfePoint wp{alpha, t.f, dot(t.g, p)};
      trials.push_back(std::move(t));
      return wp;
    };

    double alpha_init;
    if (st.restart_flag || alpha_prev <= 0.0) {
      alpha_init = 1.0 / std::max(norm_inf(p), 1e-300);
      alpha_init = std::min(alpha_init, 1.0);
    } else {
      alpha_init = alpha_prev * dphi_prev / dphi0;
    }
    const WolfeResult ws =
        wolfe_linesearch(line, res.f, dphi0, cap, alpha_init, cfg.wolfe);

    auto it = std::find_if(trials.begin(), trials.end(),
                           [&](const Trial& t) { return t.alpha == ws.alpha; });
    if (ws.alpha >= cap && kind != CapKind::kNone) {
      return finish_hit(std::move(it->x));
    }

    axpy(ws.alpha, d, v);
    res.x = std::move(it->x);
    res.f = it->f;
    res.g = std::move(it->g);
    st.g_prev = gr;
    st.d_prev = d;
    st.restart_flag = false;
    alpha_prev = ws.alpha;
    dphi_prev = dphi0;
    gr = rs.reduce_gradient(res.g);
    res.norm_gred = face_norm(gr);
    res.trace.push_back({iter + 1, res.f, res.norm_gred, ws.alpha, CapKind::kNone});
  }
}

void write_rcgd_trace_csv(std::ostream& os,
                          std::span<const RcgdTraceRow> rows) {
  const auto old = os.precision(17);
  os << "iter,f,norm_gred,alpha,cap_kind\n";
  for (const auto& r : rows) {
    const char* kind = r.cap == CapKind::kBox      ? "box"
                       : r.cap == CapKind::kLinear ? "linear"
                                                   : "none";
    os << r.iter << ',' << r.f << ',' << r.norm_gred << ',' << r.alpha << ','
       << kind << '\n';
  }
  os.precision(old);
}

}  // namespace knapsack
