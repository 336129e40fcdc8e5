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

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "knapsack/knapsack_set.hpp"

namespace oracle {

using knapsack::KnapsackSet;
using knapsack::Vector;

struct Solution {
  Vector x;
  double multiplier = 0.0;
  bool verified = false;  // false: produced by the fallback search
};

// Projection onto an equality set by enumerating every {lower, free, upper}
// assignment, n <= 10. Falls back to bisection on the multiplier when no
// assignment verifies.
Solution project_equality(std::span<const double> y, const KnapsackSet& set);

// Interval sets: nearest feasible point among mid(l, y, u) and the two
// equality projections.
Solution project_interval(std::span<const double> y, const KnapsackSet& set);

Solution project(std::span<const double> y, const KnapsackSet& set);

// min 1/2 x'Hx + c'x over the set by enumerating bound patterns times the
// row status and solving each KKT system densely, n <= 8. Multiplier signs
// (g = lambda a + mu, mu_i >= 0 at l_i, <= 0 at u_i, lambda >= 0 on b_l,
// <= 0 on b_u) must verify. nullopt when nothing verifies.
std::optional<Solution> qp(const Eigen::MatrixXd& H, std::span<const double> c,
                           const KnapsackSet& set);

struct KktReport {
  double stationarity = 0.0;   // |g_F - lambda a_F|_inf
  double sign_violation = 0.0; // worst wrong-sign multiplier
  double box_violation = 0.0;
  double linear_violation = 0.0;
  double lambda = 0.0;
  double worst() const;
};

// Least-squares multiplier on the face of x (bounds active within
// rel_tol max(1,|l|,|u|)) and the resulting KKT residuals.
KktReport kkt_certificate(std::span<const double> x, std::span<const double> g,
                          const KnapsackSet& set, double rel_tol = 1e-9);

}  // namespace oracle
