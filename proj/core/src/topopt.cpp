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

#include "knapsack/topopt.hpp"

#include <cmath>
#include <ostream>

#include "knapsack/region.hpp"

namespace knapsack {

namespace {

double harmonic(double a, double b) { return 2.0 * a * b / (a + b); }

Vector conductivities(std::span<const double> w, const TopoProblem& p) {
  require_size(w.size(), p.cells(), "topopt: w");
  Vector k(w.size());
  for (std::size_t c = 0; c < w.size(); ++c) k[c] = p.conductivity(w[c]);
  return k;
}

// Calls face(c, n) for every interior face once and boundary(c) for every
// boundary face.
template <class Face, class Boundary>
void for_each_face(std::size_t N, Face face, Boundary boundary) {
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < N; ++i) {
      const std::size_t c = j * N + i;
      if (i + 1 < N) face(c, c + 1); else boundary(c);
      if (j + 1 < N) face(c, c + N); else boundary(c);
      if (i == 0) boundary(c);
      if (j == 0) boundary(c);
    }
  }
}

Vector apply_with(const Vector& k, std::span<const double> x, std::size_t N) {
  Vector y(x.size(), 0.0);
  for_each_face(
      N,
      [&](std::size_t c, std::size_t n) {
        const double t = harmonic(k[c], k[n]) * (x[c] - x[n]);
        y[c] += t;
        y[n] -= t;
      },
      [&](std::size_t c) { y[c] += 2.0 * k[c] * x[c]; });
  return y;
}

PcgResult pcg(const Vector& k, const Vector& b, const TopoProblem& p) {
  const std::size_t n = b.size();
  const std::size_t N = p.grid;
  PcgResult res;
  res.x.assign(n, 0.0);
  const double nb = norm2(b);
  if (nb == 0.0) return res;

  Vector diag(n, 0.0);
  for_each_face(
      N,
      [&](std::size_t c, std::size_t m) {
        const double kf = harmonic(k[c], k[m]);
        diag[c] += kf;
        diag[m] += kf;
      },
      [&](std::size_t c) { diag[c] += 2.0 * k[c]; });

  Vector r = b;
  Vector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  Vector d = z;
  double rz = dot(r, z);
  const std::size_t max_iter = p.pcg_max_iter ? p.pcg_max_iter : 10 * n;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Vector q = apply_with(k, d, N);
    const double alpha = rz / dot(d, q);
    axpy(alpha, d, res.x);
    axpy(-alpha, q, r);
    const double rel = norm2(r) / nb;
    res.residuals.push_back(rel);
    res.iterations = it + 1;
    if (rel <= p.pcg_tol) return res;
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) d[i] = z[i] + beta * d[i];
  }
  throw LinearSolveError("pcg: relative residual above tolerance",
                         std::move(res.residuals));
}

}  // namespace

void TopoProblem::validate() const {
  if (grid < 1) throw Error(ErrorKind::kInvalidArgument, "topopt: grid must be >= 1");
  if (!(k_alpha > 0.0 && k_alpha <= k_beta) || !std::isfinite(k_beta)) {
    throw Error(ErrorKind::kInvalidArgument,
                "topopt: need 0 < k_alpha <= k_beta");
  }
  if (!(volume_fraction >= 0.0 && volume_fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "topopt: R must be in [0, 1]");
  }
  if (!load.empty()) {
    require_size(load.size(), cells(), "topopt: load");
    if (!all_finite(load)) throw Error(ErrorKind::kNonFinite, "topopt: load not finite");
  }
  if (!std::isfinite(theta0) || !(pcg_tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "topopt: theta0 must be finite and pcg_tol positive");
  }
}

KnapsackSet TopoProblem::design_set() const {
  const std::size_t n = cells();
  return KnapsackSet(Vector(n, 0.0), Vector(n, 1.0), Vector(n, cell_volume()),
                     Equality{volume_fraction});
}

Vector apply_operator(std::span<const double> w, std::span<const double> x,
                      const TopoProblem& p) {
  require_size(x.size(), p.cells(), "topopt: x");
  return apply_with(conductivities(w, p), x, p.grid);
}

PcgResult solve_state(std::span<const double> w, const TopoProblem& p) {
  const Vector k = conductivities(w, p);
  const double area = p.cell_volume();
  Vector b(p.cells());
  for (std::size_t c = 0; c < b.size(); ++c) {
    b[c] = (p.load.empty() ? 1.0 : p.load[c]) * area;
  }
  if (p.theta0 != 0.0) {
    for_each_face(
        p.grid, [](std::size_t, std::size_t) {},
        [&](std::size_t c) { b[c] += 2.0 * k[c] * p.theta0; });
  }
  return pcg(k, b, p);
}

PcgResult solve_adjoint(std::span<const double> w, std::span<const double> theta,
                        const TopoProblem& p) {
  require_size(theta.size(), p.cells(), "topopt: theta");
  const Vector k = conductivities(w, p);
  Vector b(p.cells(), 0.0);
  for_each_face(
      p.grid,
      [&](std::size_t c, std::size_t n) {
        const double t = theta[c] - theta[n];
        b[c] += t;
        b[n] -= t;
      },
      [&](std::size_t c) { b[c] += 2.0 * (theta[c] - p.theta0); });
  return pcg(k, b, p);
}

double objective_value(std::span<const double> theta, const TopoProblem& p) {
  require_size(theta.size(), p.cells(), "topopt: theta");
  double s = 0.0;
  for_each_face(
      p.grid,
      [&](std::size_t c, std::size_t n) {
        const double t = theta[c] - theta[n];
        s += t * t;
      },
      [&](std::size_t c) {
        const double t = theta[c] - p.theta0;
        s += 2.0 * t * t;
      });
  return 0.5 * s;
}

Vector gradient(std::span<const double> w, std::span<const double> theta,
                std::span<const double> eta, const TopoProblem& p) {
  require_size(theta.size(), p.cells(), "topopt: theta");
  require_size(eta.size(), p.cells(), "topopt: eta");
  const Vector k = conductivities(w, p);
  const double dk = p.k_beta - p.k_alpha;
  Vector g(p.cells(), 0.0);
  for_each_face(
      p.grid,
      [&](std::size_t c, std::size_t n) {
        const double t = (eta[c] - eta[n]) * (theta[c] - theta[n]);
        const double s = (k[c] + k[n]) * (k[c] + k[n]);
        g[c] -= dk * 2.0 * k[n] * k[n] / s * t;
        g[n] -= dk * 2.0 * k[c] * k[c] / s * t;
      },
      [&](std::size_t c) { g[c] -= dk * 2.0 * eta[c] * (theta[c] - p.theta0); });
  return g;
}

double boundary_flux(std::span<const double> w, std::span<const double> theta,
                     const TopoProblem& p) {
  require_size(theta.size(), p.cells(), "topopt: theta");
  const Vector k = conductivities(w, p);
  double s = 0.0;
  for_each_face(
      p.grid, [](std::size_t, std::size_t) {},
      [&](std::size_t c) { s += 2.0 * k[c] * (theta[c] - p.theta0); });
  return s;
}

TopoObjective::TopoObjective(TopoProblem p) : p_(std::move(p)) { p_.validate(); }

double TopoObjective::value(std::span<const double> w) {
  return objective_value(solve_state(w, p_).x, p_);
}

void TopoObjective::gradient(std::span<const double> w, std::span<double> g) {
  value_and_gradient(w, g);
}

double TopoObjective::value_and_gradient(std::span<const double> w,
                                         std::span<double> g) {
  const Vector theta = solve_state(w, p_).x;
  const Vector eta = solve_adjoint(w, theta, p_).x;
  const Vector gr = knapsack::gradient(w, theta, eta, p_);
  std::copy(gr.begin(), gr.end(), g.begin());
  return objective_value(theta, p_);
}

TopoResult optimize_topology(const TopoProblem& p, std::span<const double> w0,
                             const TopoConfig& cfg) {
  p.validate();
  const std::size_t n = p.cells();
  Vector start(n, p.volume_fraction);
  if (!w0.empty()) {
    require_size(w0.size(), n, "topopt: w0");
    start.assign(w0.begin(), w0.end());
  }
  TopoObjective obj(p);
  const FeasibleRegion region(p.design_set());
  const double vol = p.cell_volume();
  auto volume_residual = [&](const Vector& w) {
    double s = 0.0;
    for (double v : w) s += vol * v;
    return std::abs(s - p.volume_fraction);
  };

  TopoResult res;
  if (cfg.use_asa) {
    const Vector w_start = region.project(start);
    res.history.push_back({0, obj.eval_f(w_start), 0.0, volume_residual(w_start)});
    AsaConfig acfg = cfg.asa;
    acfg.max_cycles = cfg.max_cycles;
    SpgConfig scfg = cfg.spg;
    scfg.tol = acfg.tol;
    const AsaResult r = asa_solve(obj, region, w_start, acfg, scfg);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      res.history.push_back({k + 1, r.trace[k].f_end, 0.0, 0.0});
    }
    Vector diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = r.x[i] - w_start[i];
    const double nw = norm2(w_start);
    res.history.back().rel_change = nw > 0.0 ? norm2(diff) / nw : norm2(diff);
    res.history.back().volume_residual = volume_residual(r.x);
    res.w = r.x;
    res.converged = r.status == AsaStatus::kConverged;
    return res;
  }

  SpgSolver spg(obj, region, cfg.spg);
  spg.reset(start);
  res.history.push_back({0, spg.iterate().fx, 0.0, volume_residual(spg.iterate().x)});
  for (std::size_t cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
    if (spg.converged()) {
      res.converged = true;
      break;
    }
    const Vector w_old = spg.iterate().x;
    spg.step();
    const Vector& w = spg.iterate().x;
    Vector diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = w[i] - w_old[i];
    const double nw = norm2(w_old);
    const double rel = nw > 0.0 ? norm2(diff) / nw : norm2(diff);
    res.history.push_back({cycle, spg.iterate().fx, rel, volume_residual(w)});
    if (rel < cfg.rel_change_tol) {
      res.converged = true;
      break;
    }
  }
  res.w = spg.iterate().x;
  return res;
}

void write_grid_text(std::ostream& os, std::span<const double> w,
                     std::size_t grid) {
  require_size(w.size(), grid * grid, "write_grid_text: w");
  const auto old = os.precision(17);
  for (std::size_t r = 0; r < grid; ++r) {
    const std::size_t j = grid - 1 - r;
    for (std::size_t i = 0; i < grid; ++i) {
      if (i) os << ' ';
      os << w[j * grid + i];
    }
    os << '\n';
  }
  os.precision(old);
}

void write_vtk(std::ostream& os, std::span<const double> w, std::size_t grid) {
  require_size(w.size(), grid * grid, "write_vtk: w");
  const double h = 1.0 / static_cast<double>(grid);
  const auto old = os.precision(17);
  os << "# vtk DataFile Version 3.0\n"
     << "w field\n"
     << "ASCII\n"
     << "DATASET STRUCTURED_POINTS\n"
     << "DIMENSIONS " << grid + 1 << ' ' << grid + 1 << " 1\n"
     << "ORIGIN 0 0 0\n"
     << "SPACING " << h << ' ' << h << " 1\n"
     << "CELL_DATA " << grid * grid << '\n'
     << "SCALARS w double 1\n"
     << "LOOKUP_TABLE default\n";
  for (double v : w) os << v << '\n';
  os.precision(old);
}

void write_history_csv(std::ostream& os, std::span<const TopoCycle> history) {
  const auto old = os.precision(17);
  os << "cycle,J,rel_change,volume_residual\n";
  for (const auto& c : history) {
    os << c.cycle << ',' << c.J << ',' << c.rel_change << ','
       << c.volume_residual << '\n';
  }
  os.precision(old);
}

}  // namespace knapsack
