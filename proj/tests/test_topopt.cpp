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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "knapsack/problems.hpp"
#include "knapsack/topopt.hpp"

using namespace knapsack;

namespace {

TopoProblem small(std::size_t n) {
  TopoProblem p;
  p.grid = n;
  p.pcg_tol = 1e-13;
  return p;
}

double energy(const TopoProblem& p, std::span<const double> w) {
  return objective_value(solve_state(w, p).x, p);
}

}  // namespace

TEST(TopoProblem, Validate) {
  TopoProblem p;
  EXPECT_NO_THROW(p.validate());
  p.grid = 0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.k_beta = 0.5;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.volume_fraction = 1.5;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.grid = 4;
  p.load = Vector(3, 1.0);
  EXPECT_THROW(p.validate(), Error);
}

TEST(TopoProblem, Conductivity) {
  const TopoProblem p;
  EXPECT_EQ(p.conductivity(0.0), 1.0);
  EXPECT_EQ(p.conductivity(1.0), 2.0);
  const KnapsackSet s = p.design_set();
  EXPECT_EQ(s.size(), p.cells());
  EXPECT_DOUBLE_EQ(s.b(), 0.4);
}

TEST(StateSolve, ZeroLoad) {
  TopoProblem p = small(8);
  p.load = Vector(64, 0.0);
  const PcgResult r = solve_state(Vector(64, 0.5), p);
  EXPECT_EQ(norm_inf(r.x), 0.0);
}

TEST(StateSolve, RefinementOrder) {
  const std::vector<std::size_t> grids{16, 32, 64};
  std::vector<double> j;
  for (const std::size_t n : grids) {
    const TopoProblem p = small(n);
    j.push_back(energy(p, Vector(n * n, 0.3)));
  }
  const double ratio = (j[0] - j[1]) / (j[1] - j[2]);
  EXPECT_GT(ratio, 3.0);
  EXPECT_LT(ratio, 5.0);
}

TEST(StateSolve, SymmetricOperator) {
  Rng rng(71);
  const TopoProblem p = small(6);
  Vector w(36), x(36), y(36);
  for (std::size_t i = 0; i < 36; ++i) {
    w[i] = rng.uniform();
    x[i] = rng.normal();
    y[i] = rng.normal();
  }
  EXPECT_NEAR(dot(apply_operator(w, x, p), y), dot(x, apply_operator(w, y, p)), 1e-12);
}

TEST(StateSolve, BoundaryFluxBalancesLoad) {
  Rng rng(72);
  const TopoProblem p = small(16);
  Vector w(256);
  for (auto& v : w) v = rng.uniform();
  const PcgResult r = solve_state(w, p);
  EXPECT_NEAR(boundary_flux(w, r.x, p), 1.0, 1e-8);
  EXPECT_GE(objective_value(r.x, p), 0.0);
}

TEST(StateSolve, NonConvergenceThrows) {
  TopoProblem p = small(16);
  p.pcg_max_iter = 2;
  try {
    solve_state(Vector(256, 0.5), p);
    FAIL();
  } catch (const LinearSolveError& e) {
    EXPECT_EQ(e.residual_history().size(), 2u);
  }
}

TEST(Adjoint, UniformThetaGivesZero) {
  const TopoProblem p = small(8);
  const Vector theta(64, 0.0);
  EXPECT_EQ(norm_inf(solve_adjoint(Vector(64, 0.5), theta, p).x), 0.0);
}

TEST(Gradient, MatchesFiniteDifferences) {
  Rng rng(73);
  const TopoProblem p = small(8);
  Vector w(64);
  for (auto& v : w) v = rng.uniform(0.2, 0.8);
  const Vector theta = solve_state(w, p).x;
  const Vector eta = solve_adjoint(w, theta, p).x;
  const Vector g = gradient(w, theta, eta, p);
  for (int k = 0; k < 20; ++k) {
    const std::size_t c = rng.index(64);
    const double h = 1e-6;
    Vector wp = w, wm = w;
    wp[c] += h;
    wm[c] -= h;
    const double fd = (energy(p, wp) - energy(p, wm)) / (2 * h);
    EXPECT_LE(std::abs(g[c] - fd), 1e-4 * std::abs(fd)) << "cell " << c;
  }
}

TEST(Gradient, IdenticalMaterials) {
  TopoProblem p = small(8);
  p.k_beta = p.k_alpha;
  const Vector w(64, 0.4);
  const Vector theta = solve_state(w, p).x;
  const Vector eta = solve_adjoint(w, theta, p).x;
  EXPECT_EQ(norm_inf(gradient(w, theta, eta, p)), 0.0);
}

TEST(Gradient, DescentStepDecreasesJ) {
  const TopoProblem p = small(16);
  TopoObjective obj(p);
  const Vector w(256, 0.4);
  Vector g(256);
  const double j0 = obj.eval_f_and_grad(w, g);
  const FeasibleRegion region(p.design_set());
  Vector y(256);
  const double t = 1e-2 / norm_inf(g);
  for (std::size_t i = 0; i < 256; ++i) y[i] = w[i] - t * g[i];
  EXPECT_LT(obj.eval_f(region.project(y)), j0);
}

TEST(Optimize, FullVolumeExitsImmediately) {
  TopoProblem p = small(8);
  p.volume_fraction = 1.0;
  const TopoResult r = optimize_topology(p, {});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.history.size(), 1u);
  for (double v : r.w) EXPECT_EQ(v, 1.0);
}

TEST(Optimize, VolumeExactAndEnvelopeDecreasing) {
  TopoProblem p = small(16);
  p.pcg_tol = 1e-10;
  TopoConfig cfg;
  const TopoResult r = optimize_topology(p, {}, cfg);
  EXPECT_TRUE(r.converged);
  ASSERT_GE(r.history.size(), 2u);
  for (std::size_t k = 0; k < r.history.size(); ++k) {
    EXPECT_LE(r.history[k].volume_residual, 1e-10);
    if (k == 0) continue;
    const std::size_t from = k > cfg.spg.memory ? k - cfg.spg.memory : 0;
    double ref = r.history[from].J;
    for (std::size_t m = from; m < k; ++m) ref = std::max(ref, r.history[m].J);
    EXPECT_LE(r.history[k].J, ref);
  }
  EXPECT_LT(r.history.back().J, r.history.front().J);
}

TEST(Optimize, ConductivityMatters) {
  TopoProblem p = small(12);
  TopoConfig cfg;
  cfg.max_cycles = 30;
  const TopoResult a = optimize_topology(p, {}, cfg);
  p.k_beta = 4.0;
  const TopoResult b = optimize_topology(p, {}, cfg);
  EXPECT_GT(max_abs_diff(a.w, b.w), 1e-3);
}

TEST(Optimize, AsaDriverKeepsVolume) {
  TopoProblem p = small(8);
  TopoConfig cfg;
  cfg.use_asa = true;
  cfg.asa.tol = 1e-6;
  const TopoResult r = optimize_topology(p, {}, cfg);
  EXPECT_LE(r.history.back().volume_residual, 1e-10);
  EXPECT_LT(r.history.back().J, r.history.front().J);
}

TEST(Writers, Formats) {
  const Vector w{0, 1, 2, 3};
  std::ostringstream grid;
  write_grid_text(grid, w, 2);
  EXPECT_EQ(grid.str().substr(0, 1), "2");
  std::ostringstream vtk;
  write_vtk(vtk, w, 2);
  EXPECT_NE(vtk.str().find("DIMENSIONS 3 3 1"), std::string::npos);
  EXPECT_NE(vtk.str().find("CELL_DATA 4"), std::string::npos);
  std::ostringstream csv;
  const std::vector<TopoCycle> h{TopoCycle{0, 1.0, 0.0, 0.0}};
  write_history_csv(csv, h);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "cycle,J,rel_change,volume_residual");
}
