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

#include <cmath>
#include <limits>
#include <sstream>

#include "knapsack/problems.hpp"
#include "knapsack/projection.hpp"
#include "knapsack/spg.hpp"
#include "oracle.hpp"

using namespace knapsack;

namespace {

class Square : public Objective {
 public:
  std::size_t dimension() const override { return 1; }

 protected:
  double value(std::span<const double> x) override { return x[0] * x[0]; }
  void gradient(std::span<const double> x, std::span<double> g) override { g[0] = 2 * x[0]; }
};

class NanAfter : public Objective {
 public:
  explicit NanAfter(std::size_t n) : n_(n) {}
  std::size_t dimension() const override { return n_; }

 protected:
  double value(std::span<const double> x) override {
    return x[0] < 0.5 ? std::nan("") : 0.5 * dot(x, x);
  }
  void gradient(std::span<const double> x, std::span<double> g) override {
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i];
  }

 private:
  std::size_t n_;
};

KnapsackSet unit_box(Vector a, Rhs rhs) {
  const std::size_t n = a.size();
  return KnapsackSet(Vector(n, 0.0), Vector(n, 1.0), std::move(a), rhs);
}

Eigen::MatrixXd dense_h(const QpProblem& qp) {
  const std::size_t n = qp.size();
  Eigen::MatrixXd h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = qp.hessian(i, j);
  return h;
}

}  // namespace

TEST(ScaledProjectedGradient, Examples) {
  const KnapsackSet s({-10, -10}, {10, 10}, {1, 1}, Interval{-100, 100});
  const Vector x{0.3, -0.2};
  EXPECT_EQ(norm_inf(scaled_projected_gradient(x, 1.0, Vector{0, 0}, s)), 0.0);
  const Vector d = scaled_projected_gradient(x, 1.0, Vector{0.1, -0.4}, s);
  EXPECT_NEAR(d[0], -0.1, 1e-15);
  EXPECT_NEAR(d[1], 0.4, 1e-15);
  const KnapsackSet e = unit_box({1, 1}, Equality{1.0});
  const Vector c{0.25, 0.75};
  EXPECT_LE(norm_inf(scaled_projected_gradient(c, 1.0, Vector{0, 0}, e)), 1e-15);
}

TEST(BbStepsize, Rules) {
  const SpgConfig cfg;
  EXPECT_DOUBLE_EQ(bb_stepsize(Vector{1, 0}, Vector{2, 0}, cfg), 0.5);
  EXPECT_EQ(bb_stepsize(Vector{1, 0}, Vector{-1, 0}, cfg), 1.0);
  EXPECT_EQ(bb_stepsize(Vector{1, 0}, Vector{0, 3}, cfg), 1.0);
  SpgConfig tight;
  tight.alpha_max = 10;
  EXPECT_EQ(bb_stepsize(Vector{1, 0}, Vector{1e-6, 0}, tight), 10.0);
}

TEST(BbStepsize, RayleighBounds) {
  Rng rng(41);
  const SpgConfig cfg;
  for (int t = 0; t < 200; ++t) {
    const Vector s{rng.normal(), rng.normal()};
    const Vector y{s[0], 4 * s[1]};
    const double alpha = bb_stepsize(s, y, cfg);
    EXPECT_GE(alpha, 0.25 - 1e-15);
    EXPECT_LE(alpha, 1.0 + 1e-15);
    EXPECT_NEAR(alpha * dot(s, y) / dot(s, s), 1.0, 1e-14);
  }
}

TEST(SpgConfig, Validate) {
  SpgConfig c;
  EXPECT_NO_THROW(c.validate());
  c.gamma = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.memory = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.alpha_min = 2;
  c.alpha_max = 1;
  EXPECT_THROW(c.validate(), Error);
}

TEST(NonmonotoneLinesearch, FullStepOneEvaluation) {
  ProjectionObjective obj(Vector{0.5, 0.5});
  const Vector x{0, 0};
  const double fx = obj.eval_f(x);
  obj.reset_counters();
  const Vector target{0.5, 0.5};
  const LineSearchOutcome r =
      nonmonotone_linesearch(obj, x, fx, target, fx, -0.5, SpgConfig{});
  EXPECT_EQ(r.alpha, 1.0);
  EXPECT_EQ(r.evaluations, 1);
  EXPECT_EQ(obj.n_f(), 1u);
  EXPECT_EQ(r.x, target);
}

TEST(NonmonotoneLinesearch, QuadraticBacktrack) {
  Square obj;
  const Vector x{1};
  const Vector target{-1};
  const SpgConfig cfg;
  const LineSearchOutcome r = nonmonotone_linesearch(obj, x, 1.0, target, 1.0, -4.0, cfg);
  // q(a) = 1 - 4a + 4a^2 is minimized at a = 1/2, inside [0.1, 0.9].
  EXPECT_DOUBLE_EQ(r.alpha, 0.5);
  EXPECT_EQ(r.evaluations, 2);
  EXPECT_LE(r.f, 1.0 + cfg.gamma * r.alpha * -4.0);
}

TEST(NonmonotoneLinesearch, MonotoneWithMemoryOne) {
  Rng rng(42);
  SpgConfig cfg;
  cfg.memory = 1;
  for (int t = 0; t < 20; ++t) {
    const QpProblem qp = make_random_qp(20, 100 + t, HessianKind::kDenseSpd, SetKind::kEquality);
    QuadraticObjective obj(qp);
    const FeasibleRegion region(qp.set);
    const SpgResult r = spg_solve(obj, region, Vector(20, 0.0), cfg);
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
      const double f0 = r.trace[k - 1].f;
      if (r.trace[k].slope_accepted) {
        EXPECT_LE(r.trace[k].f, f0 + 1e-12 * std::max(1.0, std::abs(f0)));
      } else {
        EXPECT_LE(r.trace[k].f, f0);
      }
    }
  }
}

TEST(NonmonotoneLinesearch, ThrowsWithBestPoint) {
  Square obj;
  SpgConfig cfg;
  cfg.max_backtracks = 2;
  // delta is claimed far more negative than the true slope.
  try {
    nonmonotone_linesearch(obj, Vector{1}, 1.0, Vector{0.999}, 1.0, -1e6, cfg);
    FAIL();
  } catch (const LineSearchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLineSearchFailure);
    EXPECT_EQ(e.best_point().size(), 1u);
  }
}

TEST(SpgSolve, FeasibleTargetInOneStep) {
  const KnapsackSet s = unit_box({1, 1, 1}, Equality{1.5});
  ProjectionObjective obj(Vector{0.5, 0.5, 0.5});
  const FeasibleRegion region(s);
  const SpgResult r = spg_solve(obj, region, Vector{1, 0.5, 0});
  EXPECT_EQ(r.status, SpgStatus::kConverged);
  EXPECT_LE(r.iterations, 2u);
  EXPECT_LE(max_abs_diff(r.x, Vector{0.5, 0.5, 0.5}), 1e-15);
}

TEST(SpgSolve, ProjectionSelfConsistency) {
  Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 5 + rng.index(100);
    const KnapsackSet s = make_random_set(n, rng, t % 2 ? SetKind::kInterval : SetKind::kEquality);
    Vector y(n);
    for (auto& v : y) v = 2 * rng.normal();
    ProjectionObjective obj(y);
    SpgConfig cfg;
    cfg.tol = 1e-12;
    const SpgResult r = spg_solve(obj, FeasibleRegion(s), Vector(n, 0.0), cfg);
    EXPECT_LE(max_abs_diff(r.x, project(y, s).z), 1e-9);
  }
}

TEST(SpgSolve, RandomQpConvergesAndCertifies) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const QpProblem qp = make_random_qp(50, seed, HessianKind::kDenseSpd, SetKind::kEquality);
    QuadraticObjective obj(qp);
    const SpgResult r = spg_solve(obj, FeasibleRegion(qp.set), Vector(50, 0.0));
    ASSERT_EQ(r.status, SpgStatus::kConverged);
    EXPECT_LE(r.norm_d1, 1e-8);
    Vector g(50);
    obj.eval_grad(r.x, g);
    EXPECT_LE(oracle::kkt_certificate(r.x, g, qp.set, 1e-6).worst(), 1e-6);
  }
}

TEST(SpgSolve, MatchesOracleSmall) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const SetKind sk = seed % 2 ? SetKind::kInterval : SetKind::kEquality;
    const QpProblem qp = make_random_qp(n, seed, HessianKind::kDenseSpd, sk);
    const auto sol = oracle::qp(dense_h(qp), qp.c, qp.set);
    ASSERT_TRUE(sol.has_value());
    QuadraticObjective obj(qp);
    SpgConfig cfg;
    cfg.tol = 1e-11;
    const SpgResult r = spg_solve(obj, FeasibleRegion(qp.set), Vector(n, 0.0), cfg);
    EXPECT_LE(max_abs_diff(r.x, sol->x), 1e-6) << "seed " << seed;
  }
}

TEST(SpgSolve, TraceInvariants) {
  const QpProblem qp = make_random_qp(80, 9, HessianKind::kDenseSpd, SetKind::kInterval);
  QuadraticObjective obj(qp);
  const FeasibleRegion region(qp.set);
  const SpgConfig cfg;
  const SpgResult r = spg_solve(obj, region, Vector(80, 0.0), cfg);
  ASSERT_GE(r.trace.size(), 2u);
  EXPECT_EQ(r.trace.front().iter, 0u);
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    const SpgTraceRow& row = r.trace[k];
    EXPECT_EQ(row.iter, k);
    EXPECT_LT(row.delta, 0.0);
    const double band = row.slope_accepted ? 1e-12 * std::max(1.0, std::abs(row.f_ref)) : 0.0;
    EXPECT_LE(row.f, row.f_ref + cfg.gamma * row.step * row.delta + band);
    EXPECT_GE(row.n_f, r.trace[k - 1].n_f);
    EXPECT_GE(row.n_g, r.trace[k - 1].n_g);
  }
  EXPECT_TRUE(region.contains(r.x));
  EXPECT_TRUE(in_box(qp.set, r.x));
}

TEST(SpgSolve, IteratesStayFeasible) {
  const QpProblem qp = make_random_qp(60, 11, HessianKind::kDiagonal, SetKind::kEquality);
  QuadraticObjective obj(qp);
  const FeasibleRegion region(qp.set);
  SpgSolver solver(obj, region, SpgConfig{});
  solver.reset(Vector(60, 0.0));
  for (int k = 0; k < 30 && !solver.converged(); ++k) {
    solver.step();
    EXPECT_TRUE(in_box(qp.set, solver.iterate().x));
    EXPECT_LE(linear_residual(qp.set, solver.iterate().x),
              linear_tolerance(qp.set, solver.iterate().x, qp.set.b()));
  }
}

TEST(SpgSolve, EvaluationErrorCarriesPoint) {
  const KnapsackSet s = unit_box({1, 1}, Equality{1.0});
  NanAfter obj(2);
  try {
    spg_solve(obj, FeasibleRegion(s), Vector{0.2, 0.8});
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.point().size(), 2u);
  }
}

TEST(SpgTrace, CsvHeader) {
  std::ostringstream os;
  const std::vector<SpgTraceRow> rows{SpgTraceRow{0, 1.5, 0.25, 1.0, 1, 1}};
  write_spg_trace_csv(os, rows);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "iter,f,norm_d1,alpha_bb,n_f,n_g");
  std::getline(is, line);
  EXPECT_EQ(line, "0,1.5,0.25,1,1,1");
}
