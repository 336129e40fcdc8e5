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

#include "knapsack/suite.hpp"

namespace knapsack {

namespace {

SuiteCase from_qp(std::string name, const QpProblem& qp, std::uint64_t seed) {
  ProblemSpec p = problem_from_qp(qp);
  p.seed = seed;
  return {std::move(name), std::move(p)};
}

}  // namespace

std::vector<SuiteCase> solver_suite(std::span<const std::size_t> sizes,
                                    std::uint64_t seed) {
  std::vector<SuiteCase> out;
  for (const std::size_t n : sizes) {
    const std::string tag = "/n=" + std::to_string(n);
    const std::uint64_t s = seed * 1000003ULL + n;
    out.push_back(from_qp("qp_diag_equality" + tag,
                          make_random_qp(n, s, HessianKind::kDiagonal, SetKind::kEquality), s));
    out.push_back(from_qp("qp_diag_interval" + tag,
                          make_random_qp(n, s + 1, HessianKind::kDiagonal, SetKind::kInterval), s + 1));
    if (n <= 200) {
      out.push_back(from_qp("qp_dense_equality" + tag,
                            make_random_qp(n, s + 2, HessianKind::kDenseSpd, SetKind::kEquality), s + 2));
      out.push_back(from_qp("qp_dense_interval" + tag,
                            make_random_qp(n, s + 3, HessianKind::kDenseSpd, SetKind::kInterval), s + 3));
    }
    out.push_back(from_qp("planted" + tag,
                          make_planted_qp(n, s + 4, HessianKind::kDiagonal).qp, s + 4));

    Rng rng(s + 5);
    for (const SetKind k : {SetKind::kEquality, SetKind::kInterval}) {
      ProblemSpec p{make_random_set(n, rng, k), ProjectionSpec{}, std::nullopt, s + 5};
      Vector y(n);
      for (auto& v : y) v = 3.0 * rng.normal();
      p.objective = ProjectionSpec{std::move(y)};
      out.push_back({std::string("projection_") + to_string(k) + tag, std::move(p)});
    }
    ProblemSpec dw{make_random_set(n, rng, SetKind::kInterval), DoubleWellSpec{}, std::nullopt, s + 5};
    Vector c(n);
    for (auto& v : c) v = 0.3 * rng.normal();
    dw.objective = DoubleWellSpec{std::move(c)};
    out.push_back({"double_well" + tag, std::move(dw)});
  }
  return out;
}

}  // namespace knapsack
