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

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "knapsack/knapsack_set.hpp"
#include "knapsack/objective.hpp"
#include "knapsack/problems.hpp"

namespace knapsack {

/// Malformed JSON input. field() is a dotted path such as "set.rhs.lo".
class JsonFieldError : public Error {
 public:
  JsonFieldError(std::string field, const std::string& what)
      : Error(ErrorKind::kInvalidArgument, field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Finite numbers only. `field` names the value in error messages.
Vector vector_from_json(const nlohmann::json& j, const std::string& field);
double number_from_json(const nlohmann::json& j, const std::string& field);

// {"n": 3, "l": [...], "u": [...], "a": [...], "rhs": {"eq": b}} or
// "rhs": {"lo": b_l, "hi": b_u}. "n" is optional and checked when present.
nlohmann::json set_to_json(const KnapsackSet& set);
KnapsackSet set_from_json(const nlohmann::json& j,
                          const std::string& field = "set");

struct QuadraticSpec {
  HessianKind kind = HessianKind::kDiagonal;
  Vector h;  // row-major n*n or n entries
  Vector c;
};
struct ProjectionSpec {
  Vector y;
};
struct DoubleWellSpec {
  Vector c;
};
using ObjectiveSpec = std::variant<QuadraticSpec, ProjectionSpec, DoubleWellSpec>;

/// {"set": {...}, "objective": {...}, "x0": [...]}
/// objective is one of
///   {"type": "quadratic", "hessian": {"diagonal": [...]} | {"dense": [[...]]},
///    "c": [...]}
///   {"type": "projection", "y": [...]}
///   {"type": "double_well", "c": [...]}
struct ProblemSpec {
  KnapsackSet set;
  ObjectiveSpec objective;
  std::optional<Vector> x0;
  std::optional<std::uint64_t> seed;
};

ProblemSpec problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemSpec& p);
ProblemSpec problem_from_qp(const QpProblem& qp);

std::unique_ptr<Objective> make_objective(const ProblemSpec& p);

}  // namespace knapsack
