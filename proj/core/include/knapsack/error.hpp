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

#include <stdexcept>
#include <string>
#include <vector>

namespace knapsack {

enum class ErrorKind {
  kInvalidArgument,
  kDimensionMismatch,
  kInfeasibleSet,
  kInfeasiblePoint,
  kNonFinite,
  kEvaluationFailure,
  kLineSearchFailure,
  kConvergenceFailure,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Objective returned a non-finite value or gradient. Carries the point at
// which the evaluation failed.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::vector<double> x)
      : Error(ErrorKind::kEvaluationFailure, what), x_(std::move(x)) {}

  const std::vector<double>& point() const noexcept { return x_; }

 private:
  std::vector<double> x_;
};

class LineSearchError : public Error {
 public:
  LineSearchError(const std::string& what, double best_step,
                  std::vector<double> best_point = {})
      : Error(ErrorKind::kLineSearchFailure, what),
        best_step_(best_step),
        best_point_(std::move(best_point)) {}

  double best_step() const noexcept { return best_step_; }
  const std::vector<double>& best_point() const noexcept { return best_point_; }

 private:
  double best_step_;
  std::vector<double> best_point_;
};

class LinearSolveError : public Error {
 public:
  LinearSolveError(const std::string& what, std::vector<double> residuals)
      : Error(ErrorKind::kConvergenceFailure, what),
        residuals_(std::move(residuals)) {}

  const std::vector<double>& residual_history() const noexcept {
    return residuals_;
  }

 private:
  std::vector<double> residuals_;
};

}  // namespace knapsack
