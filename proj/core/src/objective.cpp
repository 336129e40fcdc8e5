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

#include "knapsack/objective.hpp"

#include <cmath>

namespace knapsack {

namespace {

void check_value(double f, std::span<const double> x) {
  if (!std::isfinite(f)) {
    throw EvaluationError("objective returned a non-finite value",
                          Vector(x.begin(), x.end()));
  }
}

void check_gradient(std::span<const double> g, std::span<const double> x) {
  if (!all_finite(g)) {
    throw EvaluationError("objective returned a non-finite gradient",
                          Vector(x.begin(), x.end()));
  }
}

}  // namespace

double Objective::eval_f(std::span<const double> x) {
  require_size(x.size(), dimension(), "objective: x");
  ++n_f_;
  const double f = value(x);
  check_value(f, x);
  return f;
}

void Objective::eval_grad(std::span<const double> x, std::span<double> g) {
  require_size(x.size(), dimension(), "objective: x");
  require_size(g.size(), dimension(), "objective: g");
  ++n_g_;
  gradient(x, g);
  check_gradient(g, x);
}

double Objective::eval_f_and_grad(std::span<const double> x,
                                  std::span<double> g) {
  require_size(x.size(), dimension(), "objective: x");
  require_size(g.size(), dimension(), "objective: g");
  ++n_f_;
  ++n_g_;
  const double f = value_and_gradient(x, g);
  check_value(f, x);
  check_gradient(g, x);
  return f;
}

double Objective::value_and_gradient(std::span<const double> x,
                                     std::span<double> g) {
  gradient(x, g);
  return value(x);
}

}  // namespace knapsack
