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
#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "knapsack/knapsack_set.hpp"
#include "knapsack/objective.hpp"

namespace knapsack {

/// mt19937_64 with portable mappings: uniform doubles from the top 53 bits,
/// normals by Box-Muller. Same seed gives the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // [0, 1)
  double uniform();
  // [lo, hi)
  double uniform(double lo, double hi);
  double normal();
  // {0, ..., n-1}
  std::size_t index(std::size_t n);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class HessianKind { kDenseSpd, kDiagonal };
enum class SetKind { kEquality, kInterval };

const char* to_string(HessianKind k);
const char* to_string(SetKind k);

/// f(x) = 1/2 x'Hx + c'x over a knapsack set.
struct QpProblem {
  HessianKind kind = HessianKind::kDiagonal;
  Vector h;  // n*n row-major when dense, n entries when diagonal
  Vector c;
  KnapsackSet set;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return c.size(); }
  double hessian(std::size_t i, std::size_t j) const;
  Vector hessian_times(std::span<const double> x) const;
  double value(std::span<const double> x) const;
};

// Box l_i ~ U(-1, 0), u_i = l_i + U(0.1, 2); a_i = +-U(0.5, 1.5); rhs drawn
// strictly inside the attainable range.
KnapsackSet make_random_set(std::size_t n, Rng& rng, SetKind kind);

// H = B'B + n eps I with B 2n x n uniform(-1, 1), or diagonal U(0.5, 2);
// c ~ N(0, 1) scaled by the largest diagonal entry.
QpProblem make_random_qp(std::size_t n, std::uint64_t seed, HessianKind kind,
                         SetKind set_kind);

/// QP with a known strictly complementary minimizer over an equality set.
struct PlantedQp {
  QpProblem qp;
  Vector x_star;
  double lambda = 0.0;
};

// Picks x*, the active bounds, lambda and bound multipliers of magnitude
// U(0.5, 1.5), then sets c and b so that x* satisfies KKT.
PlantedQp make_planted_qp(std::size_t n, std::uint64_t seed, HessianKind kind,
                          double active_fraction = 0.3);

class QuadraticObjective : public Objective {
 public:
  explicit QuadraticObjective(QpProblem qp) : qp_(std::move(qp)) {}
  std::size_t dimension() const override { return qp_.size(); }
  const QpProblem& problem() const noexcept { return qp_; }

 protected:
  double value(std::span<const double> x) override;
  void gradient(std::span<const double> x, std::span<double> g) override;
  double value_and_gradient(std::span<const double> x,
                            std::span<double> g) override;

 private:
  QpProblem qp_;
};

// f(x) = 1/2 |x - y|^2.
class ProjectionObjective : public Objective {
 public:
  explicit ProjectionObjective(Vector y) : y_(std::move(y)) {}
  std::size_t dimension() const override { return y_.size(); }
  std::span<const double> target() const noexcept { return y_; }

 protected:
  double value(std::span<const double> x) override;
  void gradient(std::span<const double> x, std::span<double> g) override;

 private:
  Vector y_;
};

ProjectionObjective projection_problem(std::span<const double> y,
                                       const KnapsackSet& set);

// f(x) = sum 1/4 (x_i^2 - 1)^2 + c'x. Nonconvex.
class DoubleWellObjective : public Objective {
 public:
  explicit DoubleWellObjective(Vector c) : c_(std::move(c)) {}
  std::size_t dimension() const override { return c_.size(); }
  std::span<const double> linear() const noexcept { return c_; }

 protected:
  double value(std::span<const double> x) override;
  void gradient(std::span<const double> x, std::span<double> g) override;

 private:
  Vector c_;
};

// Max over i of |g_i - fd_i| / max(1, |fd_i|) with central differences,
// step h_i = h_rel (1 + |x_i|). Counts against obj's counters.
double gradient_check(Objective& obj, std::span<const double> x,
                      double h_rel = 1e-6);

}  // namespace knapsack
