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

#include "knapsack/asa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

namespace knapsack {

namespace {

double row_scale(const KnapsackSet& set, std::span<const double> x, double b) {
  const auto a = set.a();
  double s = std::abs(b);
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(a[i] * x[i]);
  return s;
}

bool row_is_active(LinearState s) {
  return s == LinearState::kEqualityActive ||
         s == LinearState::kIntervalLowerActive ||
         s == LinearState::kIntervalUpperActive;
}

double state_rhs(const KnapsackSet& set, LinearState s) {
  switch (s) {
    case LinearState::kEqualityActive: return set.b();
    case LinearState::kIntervalLowerActive: return set.interval().lo;
    case LinearState::kIntervalUpperActive: return set.interval().hi;
    default: return 0.0;
  }
}

void snap_active(Vector& x, const KnapsackSet& set, const IndexPartition& part) {
  const auto l = set.lower();
  const auto u = set.upper();
  for (std::size_t i : part.active) {
    x[i] = std::abs(x[i] - l[i]) <= std::abs(u[i] - x[i]) ? l[i] : u[i];
  }
}

// Puts x exactly on the face: active coordinates on their bounds and, for an
// active row, the residual spread over the free coordinates.
IndexPartition snap_to_face(Vector& x, const KnapsackSet& set, LinearState s) {
  IndexPartition part = partition(x, set, kIterateActiveTolerance);
  snap_active(x, set, part);
  if (!row_is_active(s)) return part;
  const auto a = set.a();
  const auto l = set.lower();
  const auto u = set.upper();
  double af2 = 0.0;
  for (std::size_t i : part.inactive) af2 += a[i] * a[i];
  if (af2 == 0.0) return part;
  const double r = state_rhs(set, s) - dot(a, x);
  for (std::size_t i : part.inactive) x[i] = mid(l[i], x[i] + a[i] * r / af2, u[i]);
  part = partition(x, set, kIterateActiveTolerance);
  snap_active(x, set, part);
  return part;
}

bool detect_degeneracy(std::span<const double> x, std::span<const double> g,
                       const FeasibleRegion& region) {
  const KnapsackSet& set = region.set();
  const IndexPartition part = partition(x, set, kIterateActiveTolerance);
  const LinearState s = face_linear_state(x, region);
  const auto a = set.a();
  double lambda = 0.0;
  if (row_is_active(s)) {
    double ag = 0.0;
    double aa = 0.0;
    for (std::size_t i : part.inactive) {
      ag += a[i] * g[i];
      aa += a[i] * a[i];
    }
    if (aa > 0.0) lambda = ag / aa;
  }
  const double thresh = 1e-6 * std::max(1.0, norm_inf(g));
  for (std::size_t i : part.active) {
    if (std::abs(g[i] - lambda * a[i]) <= thresh) return true;
  }
  if (set.is_interval() && row_is_active(s) && std::abs(lambda) <= thresh) {
    return true;
  }
  return false;
}

}  // namespace

void AsaConfig::validate() const {
  if (!(exp_a > 0.0 && exp_a < 1.0) || !(exp_b > 1.0 && exp_b < 2.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "asa: need exp_a in (0,1) and exp_b in (1,2)");
  }
  if (!(mu > 0.0 && mu < 1.0) || !(rho > 0.0 && rho < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "asa: need mu, rho in (0,1)");
  }
  if (repeat_limit < 1 || !(tol >= 0.0) || !(face_tol_ratio > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "asa: need repeat_limit >= 1, tol >= 0, face_tol_ratio > 0");
  }
}

const char* to_string(Phase p) { return p == Phase::kSpg ? "SPG" : "RCGD"; }

const char* to_string(SwitchReason r) {
  switch (r) {
    case SwitchReason::kConverged: return "converged";
    case SwitchReason::kUndecidedEmpty: return "undecided_empty";
    case SwitchReason::kActiveSetRepeated: return "active_set_repeated";
    case SwitchReason::kBoundHit: return "bound_hit";
    case SwitchReason::kLinearHit: return "linear_hit";
    case SwitchReason::kReducedGradientSmall: return "reduced_gradient_small";
    case SwitchReason::kLineSearchFailure: return "line_search_failure";
    case SwitchReason::kIterationLimit: return "iteration_limit";
  }
  return "?";
}

const char* to_string(AsaStatus s) {
  return s == AsaStatus::kConverged ? "converged" : "cycle_limit";
}

const char* to_string(ThreeWay w) {
  switch (w) {
    case ThreeWay::kInterior: return "interior";
    case ThreeWay::kLower: return "lower";
    case ThreeWay::kUpper: return "upper";
  }
  return "?";
}

std::vector<std::size_t> undecided_set(std::span<const double> x,
                                       std::span<const double> grad,
                                       std::span<const double> d1,
                                       const KnapsackSet& set,
                                       const AsaConfig& cfg) {
  require_size(x.size(), set.size(), "undecided_set: x");
  require_size(grad.size(), set.size(), "undecided_set: grad");
  require_size(d1.size(), set.size(), "undecided_set: d1");
  const double nd = cfg.undecided_inf_norm ? norm_inf(d1) : norm2(d1);
  const double ga = std::pow(nd, cfg.exp_a);
  const double sb = std::pow(nd, cfg.exp_b);
  const auto l = set.lower();
  const auto u = set.upper();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double gi = std::abs(grad[i]);
    const double slack = std::min(x[i] - l[i], u[i] - x[i]);
    if (gi >= ga && gi > 0.0 && slack >= sb && slack > 0.0) out.push_back(i);
  }
  return out;
}

LinearState face_linear_state(std::span<const double> x,
                              const FeasibleRegion& region) {
  if (region.box_only()) return LinearState::kNoRow;
  const KnapsackSet& set = region.set();
  if (set.is_equality()) return LinearState::kEqualityActive;
  const auto iv = set.interval();
  const double ax = dot(set.a(), x);
  const double dl = std::abs(ax - iv.lo);
  const double du = std::abs(ax - iv.hi);
  const bool lo_on = dl <= 1e-12 * row_scale(set, x, iv.lo);
  const bool hi_on = du <= 1e-12 * row_scale(set, x, iv.hi);
  if (lo_on && hi_on) {
    return dl <= du ? LinearState::kIntervalLowerActive
                    : LinearState::kIntervalUpperActive;
  }
  if (lo_on) return LinearState::kIntervalLowerActive;
  if (hi_on) return LinearState::kIntervalUpperActive;
  return LinearState::kIntervalInactive;
}

AsaResult asa_solve(Objective& obj, const FeasibleRegion& region,
                    std::span<const double> x0, const AsaConfig& cfg,
                    const SpgConfig& spg_cfg, const RcgdConfig& rcgd_cfg) {
  cfg.validate();
  spg_cfg.validate();
  const KnapsackSet& set = region.set();
  const std::size_t n = set.size();
  require_size(x0.size(), n, "asa: x0");
  require_size(obj.dimension(), n, "asa: objective dimension");
  const std::uint64_t nf0 = obj.n_f();
  const std::uint64_t ng0 = obj.n_g();

  AsaResult res;
  Vector x = region.project(x0);
  Vector g(n);
  double f = obj.eval_f_and_grad(x, g);
  double mu = cfg.mu;

  auto d1_norm = [&](std::span<const double> xx, std::span<const double> gg) {
    return norm_inf(scaled_projected_gradient(xx, 1.0, gg, region));
  };
  auto face_gradient_norm = [&](std::span<const double> xx,
                                std::span<const double> gg) {
    const ReducedSpace rs(set, xx, partition(xx, set, kIterateActiveTolerance),
                          face_linear_state(xx, region));
    return norm_inf(rs.lift_direction(rs.reduce_gradient(gg)));
  };

  double nd1 = d1_norm(x, g);
  SpgConfig scfg = spg_cfg;
  scfg.tol = cfg.tol;
  SpgSolver spg(obj, region, scfg);
  bool done = nd1 <= cfg.tol;

  RcgdConfig rcfg = rcgd_cfg;
  rcfg.tol = std::min(rcgd_cfg.tol, cfg.face_tol_ratio * cfg.tol);
  rcfg.monitor = [&](std::span<const double> xx, std::span<const double> gg,
                     double gred) {
    const double nd = d1_norm(xx, gg);
    if (nd <= cfg.tol) return RcgdVerdict::kStop;
    if (gred < mu * nd) return RcgdVerdict::kRestart;
    return RcgdVerdict::kContinue;
  };

  while (!done && res.cycles < cfg.max_cycles) {
    ++res.cycles;
    // SPG phase.
    PhaseRecord spg_rec{Phase::kSpg, 0, f, f, 0, SwitchReason::kIterationLimit};
    spg.reset(x, f, g);
    std::vector<std::size_t> prev_active =
        partition(x, set, kIterateActiveTolerance).active;
    std::size_t same = 0;
    while (spg.iterations() < spg_cfg.max_iter) {
      spg.step();
      const SolverIterate& it = spg.iterate();
      if (spg.converged()) {
        spg_rec.reason = SwitchReason::kConverged;
        done = true;
        break;
      }
      std::vector<std::size_t> active =
          partition(it.x, set, kIterateActiveTolerance).active;
      same = active == prev_active ? same + 1 : 0;
      prev_active = std::move(active);
      if (undecided_set(it.x, it.gx, it.d1, set, cfg).empty()) {
        if (face_gradient_norm(it.x, it.gx) >= mu * it.norm_d1) {
          spg_rec.reason = SwitchReason::kUndecidedEmpty;
          break;
        }
        mu *= cfg.rho;
      }
      if (same >= cfg.repeat_limit) {
        spg_rec.reason = SwitchReason::kActiveSetRepeated;
        break;
      }
    }
    {
      const SolverIterate& it = spg.iterate();
      x = it.x;
      f = it.fx;
      g = it.gx;
      nd1 = it.norm_d1;
    }
    spg_rec.iterations = spg.iterations();
    spg_rec.f_end = f;
    spg_rec.active_set_size = prev_active.size();
    res.trace.push_back(spg_rec);
    if (done || spg_rec.reason == SwitchReason::kIterationLimit) break;

    // RCGD phase; each bound or row hit starts a new record on the smaller face.
    std::optional<LinearState> forced;
    for (std::size_t hits = 0; hits <= set.size() + 1; ++hits) {
      const LinearState state = forced ? *forced : face_linear_state(x, region);
      forced.reset();
      const Vector before = x;
      IndexPartition part = snap_to_face(x, set, state);
      if (x != before) f = obj.eval_f_and_grad(x, g);
      PhaseRecord rec{Phase::kRcgd, 0, f, f, part.active.size(),
                      SwitchReason::kIterationLimit};
      const ReducedSpace rs(set, x, std::move(part), state);
      RcgdResult rr;
      try {
        rr = rcgd_solve(obj, rs, f, g, rcfg);
      } catch (const LineSearchError&) {
        rec.reason = SwitchReason::kLineSearchFailure;
        res.trace.push_back(rec);
        break;
      }
      x = std::move(rr.x);
      f = rr.f;
      g = std::move(rr.g);
      nd1 = d1_norm(x, g);
      rec.iterations = rr.iterations;
      rec.f_end = f;
      if (nd1 <= cfg.tol) {
        rec.reason = SwitchReason::kConverged;
        done = true;
      } else if (rr.status == RcgdStatus::kBoundHit) {
        rec.reason = SwitchReason::kBoundHit;
      } else if (rr.status == RcgdStatus::kLinearHit) {
        rec.reason = SwitchReason::kLinearHit;
        forced = rr.hit_side == LinearSide::kUpper
                     ? LinearState::kIntervalUpperActive
                     : LinearState::kIntervalLowerActive;
      } else if (rr.status == RcgdStatus::kMaxIterations) {
        rec.reason = SwitchReason::kIterationLimit;
      } else {
        rec.reason = SwitchReason::kReducedGradientSmall;
      }
      res.trace.push_back(rec);
      if (rec.reason != SwitchReason::kBoundHit &&
          rec.reason != SwitchReason::kLinearHit) {
        break;
      }
    }
  }

  res.x = std::move(x);
  res.f = f;
  res.norm_d1 = nd1;
  res.status = nd1 <= cfg.tol ? AsaStatus::kConverged : AsaStatus::kCycleLimit;
  res.degenerate = detect_degeneracy(res.x, g, region);
  res.n_f = obj.n_f() - nf0;
  res.n_g = obj.n_g() - ng0;
  return res;
}

ThreeSolveResult solve_interval_by_three(Objective& obj, const KnapsackSet& set,
                                         std::span<const double> x0,
                                         const AsaConfig& cfg,
                                         const SpgConfig& spg_cfg,
                                         const RcgdConfig& rcgd_cfg,
                                         const ProjectionOptions& popts) {
  const Interval iv = set.interval();
  require_feasible(set);
  ThreeSolveResult out;
  const FeasibleRegion box(set, popts, true);
  out.result = asa_solve(obj, box, x0, cfg, spg_cfg, rcgd_cfg);
  out.solves = 1;
  const double ax = dot(set.a(), out.result.x);
  const double tl = linear_tolerance(set, out.result.x,
                                     std::max(std::abs(iv.lo), std::abs(iv.hi)));
  if (ax >= iv.lo - tl && ax <= iv.hi + tl) {
    out.which = ThreeWay::kInterior;
    return out;
  }
  std::optional<AsaResult> lower;
  std::optional<AsaResult> upper;
  const KnapsackSet lo_set = set.with_rhs(Equality{iv.lo});
  const KnapsackSet hi_set = set.with_rhs(Equality{iv.hi});
  if (is_feasible(lo_set)) {
    lower = asa_solve(obj, FeasibleRegion(lo_set, popts), x0, cfg, spg_cfg,
                      rcgd_cfg);
    ++out.solves;
  }
  if (iv.hi != iv.lo && is_feasible(hi_set)) {
    upper = asa_solve(obj, FeasibleRegion(hi_set, popts), x0, cfg, spg_cfg,
                      rcgd_cfg);
    ++out.solves;
  }
  if (lower && (!upper || lower->f <= upper->f)) {
    out.result = std::move(*lower);
    out.which = ThreeWay::kLower;
  } else {
    out.result = std::move(*upper);
    out.which = ThreeWay::kUpper;
  }
  return out;
}

void write_phase_trace_csv(std::ostream& os, const PhaseTrace& trace) {
  const auto old = os.precision(17);
  os << "phase,iterations,f_start,f_end,active_set_size,reason\n";
  for (const auto& r : trace) {
    os << to_string(r.phase) << ',' << r.iterations << ',' << r.f_start << ','
       << r.f_end << ',' << r.active_set_size << ',' << to_string(r.reason)
       << '\n';
  }
  os.precision(old);
}

}  // namespace knapsack
