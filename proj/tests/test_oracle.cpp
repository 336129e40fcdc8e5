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

#include "knapsack/problems.hpp"
#include "oracle.hpp"

using namespace knapsack;

// The oracles are checked against hand cases and against each other, never
// against the library under test.

TEST(OracleProjection, HandCases) {
  const KnapsackSet s({0, 0}, {1, 1}, {1, 1}, Equality{1});
  const oracle::Solution r = oracle::project_equality(Vector{1, 1}, s);
  EXPECT_TRUE(r.verified);
  EXPECT_NEAR(r.x[0], 0.5, 1e-15);
  EXPECT_NEAR(r.multiplier, 0.5, 1e-15);
  const KnapsackSet iv({0, 0}, {1, 1}, {1, 1}, Interval{0.5, 1.5});
  EXPECT_EQ(oracle::project_interval(Vector{0.3, 0.4}, iv).x, (Vector{0.3, 0.4}));
  const Vector z = oracle::project_interval(Vector{2, 2}, iv).x;
  EXPECT_NEAR(z[0], 0.75, 1e-15);
}

TEST(OracleQp, IdentityHessianIsProjection) {
  Rng rng(101);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.index(6);
    const KnapsackSet s = make_random_set(n, rng, t % 2 ? SetKind::kInterval : SetKind::kEquality);
    Vector c(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 2 * rng.normal();
      c[i] = -y[i];
    }
    const auto q = oracle::qp(Eigen::MatrixXd::Identity(n, n), c, s);
    ASSERT_TRUE(q.has_value());
    const Vector p = oracle::project(y, s).x;
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(q->x[i], p[i], 1e-12);
  }
}

TEST(OracleKkt, DetectsWrongSign) {
  const KnapsackSet s({0, 0}, {1, 1}, {1, 1}, Equality{1});
  // x = (1, 0) with g = (0, 0): stationary. With g = (1, -1) the bound
  // multipliers have the wrong sign.
  EXPECT_LE(oracle::kkt_certificate(Vector{1, 0}, Vector{0, 0}, s).worst(), 1e-15);
  EXPECT_GT(oracle::kkt_certificate(Vector{1, 0}, Vector{1, -1}, s).worst(), 0.5);
}
