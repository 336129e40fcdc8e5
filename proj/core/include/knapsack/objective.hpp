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
#include <span>

#include "knapsack/vector_ops.hpp"

namespace knapsack {

/// Smooth objective f: R^n -> R with gradient.
///
/// Callers go through eval_f / eval_grad / eval_f_and_grad, which count calls
/// (one per call; the combined call bumps both counters) and reject
/// non-finite results with EvaluationError. Implementations override the
/// protected hooks and must be deterministic in x.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;

  double eval_f(std::span<const double> x);
  void eval_grad(std::span<const double> x, std::span<double> g);
  double eval_f_and_grad(std::span<const double> x, std::span<double> g);

  std::uint64_t n_f() const noexcept { return n_f_; }
  std::uint64_t n_g() const noexcept { return n_g_; }
  void reset_counters() noexcept { n_f_ = n_g_ = 0; }

 protected:
  virtual double value(std::span<const double> x) = 0;
  virtual void gradient(std::span<const double> x, std::span<double> g) = 0;
  // Default: value() then gradient().
  virtual double value_and_gradient(std::span<const double> x,
                                    std::span<double> g);

 private:
  std::uint64_t n_f_ = 0;
  std::uint64_t n_g_ = 0;
};

}  // namespace knapsack
