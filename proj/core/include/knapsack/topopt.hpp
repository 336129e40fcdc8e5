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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "knapsack/knapsack_set.hpp"
#include "knapsack/objective.hpp"
#include "knapsack/asa.hpp"
#include "knapsack/spg.hpp"

namespace knapsack {

/// Two-material conductor on [0,1]^2, N x N cells, cell-centred finite
/// volumes with harmonic-mean face conductivity and Dirichlet theta0 on the
/// boundary. Cells are numbered row-major, c = j N + i.
struct TopoProblem {
  std::size_t grid = 64;
  double k_alpha = 1.0;
  double k_beta = 2.0;
  Vector load;          // per-cell f; empty means f = 1 everywhere
  double theta0 = 0.0;
  double volume_fraction = 0.4;  // R
  double pcg_tol = 1e-10;        // relative residual
  std::size_t pcg_max_iter = 0;  // 0: 10 N^2

  // Throws kInvalidArgument unless grid >= 1, 0 < k_alpha <= k_beta,
  // 0 <= R <= 1 and load has N^2 finite entries when given.
  void validate() const;
  std::size_t cells() const noexcept { return grid * grid; }
  double h() const noexcept { return 1.0 / static_cast<double>(grid); }
  double cell_volume() const noexcept { return h() * h(); }
  double conductivity(double w) const { return w * k_beta + (1.0 - w) * k_alpha; }
  // {0 <= w <= 1, sum vol w = R |Omega|}.
  KnapsackSet design_set() const;
};

struct PcgResult {
  Vector x;
  std::size_t iterations = 0;
  std::vector<double> residuals;  // relative residual per iteration
};

// A(w) theta = f h^2 + boundary terms. Throws LinearSolveError when PCG does
// not reach pcg_tol.
PcgResult solve_state(std::span<const double> w, const TopoProblem& p);

// A(w) eta = L theta - r0, the discrete derivative of J with respect to
// theta; eta vanishes on the boundary.
PcgResult solve_adjoint(std::span<const double> w, std::span<const double> theta,
                        const TopoProblem& p);

// J = 1/2 sum over faces T (theta_c - theta_n)^2 with T = 2 on boundary faces
// (neighbour value theta0). Equals 1/2 int |grad theta|^2 for the two-point
// gradient.
double objective_value(std::span<const double> theta, const TopoProblem& p);

// dJ/dw_c. Divide by cell_volume() for the L2 density
// G = -(k_beta - k_alpha) grad theta . grad eta.
Vector gradient(std::span<const double> w, std::span<const double> theta,
                std::span<const double> eta, const TopoProblem& p);

// Net heat leaving through the boundary; equals the total load at a solved
// state.
double boundary_flux(std::span<const double> w, std::span<const double> theta,
                     const TopoProblem& p);

// A(w) x, the finite-volume operator.
Vector apply_operator(std::span<const double> w, std::span<const double> x,
                      const TopoProblem& p);

/// J(w) with state and adjoint solves per evaluation.
class TopoObjective : public Objective {
 public:
  explicit TopoObjective(TopoProblem p);
  std::size_t dimension() const override { return p_.cells(); }
  const TopoProblem& problem() const noexcept { return p_; }

 protected:
  double value(std::span<const double> w) override;
  void gradient(std::span<const double> w, std::span<double> g) override;
  double value_and_gradient(std::span<const double> w,
                            std::span<double> g) override;

 private:
  TopoProblem p_;
};

struct TopoConfig {
  std::size_t max_cycles = 500;
  double rel_change_tol = 1e-3;  // |w+ - w| / |w|
  SpgConfig spg = [] {
    SpgConfig c;
    c.tol = 0.0;
    return c;
  }();
  // Run the full SPG/RCGD driver instead. History then holds the start and
  // one entry per phase record; max_cycles bounds the driver cycles.
  bool use_asa = false;
  AsaConfig asa;
};

struct TopoCycle {
  std::size_t cycle = 0;
  double J = 0.0;
  double rel_change = 0.0;
  double volume_residual = 0.0;  // |sum vol w - R|
};

struct TopoResult {
  Vector w;
  std::vector<TopoCycle> history;  // entry 0 is the projected start
  bool converged = false;
};

// SPG on J over design_set(). w0 empty means w = R everywhere.
TopoResult optimize_topology(const TopoProblem& p, std::span<const double> w0,
                             const TopoConfig& cfg = {});

// N lines of N values, top row first (j = N-1).
void write_grid_text(std::ostream& os, std::span<const double> w,
                     std::size_t grid);
// Legacy VTK STRUCTURED_POINTS with cell data "w".
void write_vtk(std::ostream& os, std::span<const double> w, std::size_t grid);
// cycle,J,rel_change,volume_residual
void write_history_csv(std::ostream& os, std::span<const TopoCycle> history);

}  // namespace knapsack
