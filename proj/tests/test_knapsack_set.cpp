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
#include <limits>

#include "knapsack/knapsack_set.hpp"
#include "knapsack/problems.hpp"

using namespace knapsack;

namespace {

KnapsackSet unit_box(Vector a, Rhs rhs) {
  const std::size_t n = a.size();
  return KnapsackSet(Vector(n, 0.0), Vector(n, 1.0), std::move(a), rhs);
}

// min and max of a'x over the vertices of the box.
std::pair<double, double> vertex_range(const KnapsackSet& s) {
  const std::size_t n = s.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v += s.a()[i] * ((m >> i) & 1 ? s.upper()[i] : s.lower()[i]);
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace

TEST(FeasibilityEquality, UpperSumAttained) {
  EXPECT_TRUE(feasibility_equality(unit_box({1, 1}, Equality{2.0})));
}

TEST(FeasibilityEquality, AboveMaximum) {
  EXPECT_FALSE(feasibility_equality(unit_box({1, 1}, Equality{2.5})));
}

TEST(FeasibilityEquality, MixedSigns) {
  EXPECT_TRUE(feasibility_equality(unit_box({1, -1}, Equality{-1.0})));
}

TEST(FeasibilityInterval, InteriorInterval) {
  EXPECT_TRUE(feasibility_interval(unit_box({1, 1}, Interval{0.5, 1.5})));
}

TEST(FeasibilityInterval, Disjoint) {
  EXPECT_FALSE(feasibility_interval(unit_box({1, 1}, Interval{3.0, 4.0})));
}

TEST(FeasibilityInterval, OverlapOnly) {
  EXPECT_TRUE(feasibility_interval(unit_box({2, -1}, Interval{-1.0, -0.5})));
  // Overlap without containment.
  EXPECT_TRUE(feasibility_interval(unit_box({1, 1}, Interval{-5.0, 0.5})));
}

TEST(FeasibilityEquality, MatchesVertexEnumeration) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(10);
    Vector l(n), u(n), a(n);
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = rng.uniform(-2, 1);
      u[i] = l[i] + rng.uniform(0, 2);
      a[i] = rng.uniform() < 0.2 ? 0.0 : rng.uniform(-2, 2);
    }
    const double b = rng.uniform(-8, 8);
    const KnapsackSet s(l, u, a, Equality{b});
    const auto [lo, hi] = vertex_range(s);
    const AttainableRange r = attainable_range(s);
    EXPECT_NEAR(r.min, lo, 1e-12);
    EXPECT_NEAR(r.max, hi, 1e-12);
    if (std::abs(b - lo) > 1e-9 && std::abs(b - hi) > 1e-9) {
      EXPECT_EQ(feasibility_equality(s), lo <= b && b <= hi);
    }
  }
}

TEST(KnapsackSet, RejectsBadInput) {
  EXPECT_THROW(KnapsackSet({0}, {1}, {1, 1}, Equality{0}), Error);
  EXPECT_THROW(KnapsackSet({1}, {0}, {1}, Equality{0}), Error);
  EXPECT_THROW(KnapsackSet({0}, {1}, {1}, Interval{2, 1}), Error);
  EXPECT_THROW(KnapsackSet({}, {}, {}, Equality{0}), Error);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(KnapsackSet({0}, {inf}, {1}, Equality{0}), Error);
  EXPECT_THROW(KnapsackSet({0}, {1}, {std::nan("")}, Equality{0}), Error);
}

TEST(KnapsackSet, RhsAccessors) {
  const KnapsackSet e = unit_box({1, 2}, Equality{1.0});
  EXPECT_TRUE(e.is_equality());
  EXPECT_EQ(e.b(), 1.0);
  EXPECT_THROW(e.interval(), Error);
  const KnapsackSet i = e.with_rhs(Interval{0.0, 1.0});
  EXPECT_TRUE(i.is_interval());
  EXPECT_THROW(i.b(), Error);
  EXPECT_EQ(i.interval().hi, 1.0);
}

TEST(Partition, MixedPoint) {
  const KnapsackSet s = unit_box({1, 1, 1}, Equality{1.5});
  const Vector x{0, 0.5, 1};
  const IndexPartition p = partition(x, s);
  EXPECT_EQ(p.active, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(p.inactive, (std::vector<std::size_t>{1}));
  EXPECT_EQ(p.dim_active(), 2u);
}

TEST(Partition, InteriorPoint) {
  const KnapsackSet s = unit_box({1, 1}, Equality{1.0});
  EXPECT_TRUE(partition(Vector{0.5, 0.5}, s).active.empty());
}

TEST(Partition, FixedVariables) {
  const KnapsackSet s({1, 2, 3}, {1, 2, 3}, {1, 1, 1}, Equality{6});
  const IndexPartition p = partition(Vector{1, 2, 3}, s);
  EXPECT_EQ(p.active.size(), 3u);
}

TEST(Partition, ToleranceAndIdempotence) {
  const KnapsackSet s = unit_box({1, 1}, Equality{1.0});
  const Vector x{1e-13, 1 - 1e-13};
  EXPECT_TRUE(partition(x, s).active.empty());
  EXPECT_EQ(partition(x, s, kIterateActiveTolerance).active.size(), 2u);
  EXPECT_EQ(partition(x, s, kIterateActiveTolerance),
            partition(x, s, kIterateActiveTolerance));
}

TEST(Partition, OutOfBoxThrows) {
  const KnapsackSet s = unit_box({1, 1}, Equality{1.0});
  try {
    partition(Vector{-0.1, 0.5}, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInfeasiblePoint);
  }
}

TEST(ShrinkExpand, Examples) {
  IndexPartition p{{1}, {0, 2}};
  EXPECT_EQ(shrink(Vector{7, 8, 9}, p), (Vector{7, 9}));
  EXPECT_EQ(expand(Vector{7, 9}, p, Vector{0, 8, 0}), (Vector{7, 8, 9}));
}

TEST(ShrinkExpand, RoundTrip) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(12);
    IndexPartition p;
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      (rng.uniform() < 0.4 ? p.active : p.inactive).push_back(i);
    }
    EXPECT_EQ(expand(shrink(x, p), p, x), x);
    Vector v(p.inactive.size());
    for (auto& e : v) e = rng.normal();
    EXPECT_EQ(shrink(expand(v, p, x), p), v);
  }
}

TEST(ShrinkExpand, DimensionMismatch) {
  IndexPartition p{{1}, {0, 2}};
  EXPECT_THROW(expand(Vector{1}, p, Vector{0, 0, 0}), Error);
  EXPECT_THROW(shrink(Vector{1, 2}, p), Error);
}

TEST(LinearResidual, IntervalAndEquality) {
  const KnapsackSet e = unit_box({1, 1}, Equality{1.0});
  EXPECT_DOUBLE_EQ(linear_residual(e, Vector{1, 1}), 1.0);
  const KnapsackSet i = unit_box({1, 1}, Interval{0.5, 1.5});
  EXPECT_EQ(linear_residual(i, Vector{0.5, 0.5}), 0.0);
  EXPECT_DOUBLE_EQ(linear_residual(i, Vector{0, 0}), 0.5);
}
