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

#include "knapsack/json_io.hpp"

#include <cmath>

namespace knapsack {

namespace {

using nlohmann::json;

std::string join(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

const json& member(const json& j, const std::string& key,
                   const std::string& field) {
  if (!j.is_object()) throw JsonFieldError(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonFieldError(join(field, key), "missing");
  return *it;
}

}  // namespace

double number_from_json(const json& j, const std::string& field) {
  if (!j.is_number()) throw JsonFieldError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw JsonFieldError(field, "not finite");
  return v;
}

Vector vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw JsonFieldError(field, "expected an array of numbers");
  Vector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(number_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return v;
}

json set_to_json(const KnapsackSet& set) {
  json j;
  j["n"] = set.size();
  j["l"] = Vector(set.lower().begin(), set.lower().end());
  j["u"] = Vector(set.upper().begin(), set.upper().end());
  j["a"] = Vector(set.a().begin(), set.a().end());
  if (set.is_equality()) {
    j["rhs"] = {{"eq", set.b()}};
  } else {
    j["rhs"] = {{"lo", set.interval().lo}, {"hi", set.interval().hi}};
  }
  return j;
}

KnapsackSet set_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw JsonFieldError(field, "expected an object");
  Vector l = vector_from_json(member(j, "l", field), join(field, "l"));
  Vector u = vector_from_json(member(j, "u", field), join(field, "u"));
  Vector a = vector_from_json(member(j, "a", field), join(field, "a"));
  if (j.contains("n")) {
    const json& n = j["n"];
    if (!n.is_number_unsigned() || n.get<std::size_t>() != a.size()) {
      throw JsonFieldError(join(field, "n"), "does not match the length of a");
    }
  }
  if (l.size() != a.size()) throw JsonFieldError(join(field, "l"), "length differs from a");
  if (u.size() != a.size()) throw JsonFieldError(join(field, "u"), "length differs from a");
  const std::string rf = join(field, "rhs");
  const json& r = member(j, "rhs", field);
  if (!r.is_object()) throw JsonFieldError(rf, "expected an object");
  Rhs rhs;
  if (r.contains("eq")) {
    rhs = Equality{number_from_json(r["eq"], join(rf, "eq"))};
  } else if (r.contains("lo") || r.contains("hi")) {
    const double lo = number_from_json(member(r, "lo", rf), join(rf, "lo"));
    const double hi = number_from_json(member(r, "hi", rf), join(rf, "hi"));
    if (lo > hi) throw JsonFieldError(rf, "lo exceeds hi");
    rhs = Interval{lo, hi};
  } else {
    throw JsonFieldError(rf, "expected \"eq\" or \"lo\"/\"hi\"");
  }
  try {
    return KnapsackSet(std::move(l), std::move(u), std::move(a), rhs);
  } catch (const Error& e) {
    throw JsonFieldError(field, e.what());
  }
}

ProblemSpec problem_from_json(const json& j) {
  if (!j.is_object()) throw JsonFieldError("problem", "expected an object");
  KnapsackSet set = set_from_json(member(j, "set", ""), "set");
  const std::size_t n = set.size();
  const json& o = member(j, "objective", "");
  if (!o.is_object()) throw JsonFieldError("objective", "expected an object");
  const json& type = member(o, "type", "objective");
  if (!type.is_string()) throw JsonFieldError("objective.type", "expected a string");
  const std::string t = type.get<std::string>();

  auto sized = [&](const std::string& key) {
    const std::string f = "objective." + key;
    Vector v = vector_from_json(member(o, key, "objective"), f);
    if (v.size() != n) throw JsonFieldError(f, "length differs from set.a");
    return v;
  };

  ObjectiveSpec obj;
  if (t == "quadratic") {
    QuadraticSpec q;
    const json& h = member(o, "hessian", "objective");
    if (!h.is_object()) throw JsonFieldError("objective.hessian", "expected an object");
    if (h.contains("diagonal")) {
      q.kind = HessianKind::kDiagonal;
      q.h = vector_from_json(h["diagonal"], "objective.hessian.diagonal");
      if (q.h.size() != n) {
        throw JsonFieldError("objective.hessian.diagonal", "length differs from set.a");
      }
    } else if (h.contains("dense")) {
      q.kind = HessianKind::kDenseSpd;
      const json& rows = h["dense"];
      const std::string f = "objective.hessian.dense";
      if (!rows.is_array() || rows.size() != n) {
        throw JsonFieldError(f, "expected n rows");
      }
      for (std::size_t i = 0; i < n; ++i) {
        const std::string fi = f + "[" + std::to_string(i) + "]";
        Vector row = vector_from_json(rows[i], fi);
        if (row.size() != n) throw JsonFieldError(fi, "expected n entries");
        q.h.insert(q.h.end(), row.begin(), row.end());
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
          if (q.h[i * n + k] != q.h[k * n + i]) {
            throw JsonFieldError(f, "not symmetric");
          }
        }
      }
    } else {
      throw JsonFieldError("objective.hessian", "expected \"diagonal\" or \"dense\"");
    }
    q.c = sized("c");
    obj = std::move(q);
  } else if (t == "projection") {
    obj = ProjectionSpec{sized("y")};
  } else if (t == "double_well") {
    obj = DoubleWellSpec{sized("c")};
  } else {
    throw JsonFieldError("objective.type", "unknown type \"" + t + "\"");
  }

  ProblemSpec p{std::move(set), std::move(obj), std::nullopt, std::nullopt};
  if (j.contains("x0")) {
    Vector x0 = vector_from_json(j["x0"], "x0");
    if (x0.size() != n) throw JsonFieldError("x0", "length differs from set.a");
    p.x0 = std::move(x0);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw JsonFieldError("seed", "expected a non-negative integer");
    }
    p.seed = j["seed"].get<std::uint64_t>();
  }
  return p;
}

json problem_to_json(const ProblemSpec& p) {
  json j;
  j["set"] = set_to_json(p.set);
  const std::size_t n = p.set.size();
  if (const auto* q = std::get_if<QuadraticSpec>(&p.objective)) {
    json h;
    if (q->kind == HessianKind::kDiagonal) {
      h["diagonal"] = q->h;
    } else {
      json rows = json::array();
      for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(Vector(q->h.begin() + i * n, q->h.begin() + (i + 1) * n));
      }
      h["dense"] = rows;
    }
    j["objective"] = {{"type", "quadratic"}, {"hessian", h}, {"c", q->c}};
  } else if (const auto* pr = std::get_if<ProjectionSpec>(&p.objective)) {
    j["objective"] = {{"type", "projection"}, {"y", pr->y}};
  } else {
    const auto& dw = std::get<DoubleWellSpec>(p.objective);
    j["objective"] = {{"type", "double_well"}, {"c", dw.c}};
  }
  if (p.x0) j["x0"] = *p.x0;
  if (p.seed) j["seed"] = *p.seed;
  return j;
}

ProblemSpec problem_from_qp(const QpProblem& qp) {
  return ProblemSpec{qp.set, QuadraticSpec{qp.kind, qp.h, qp.c}, std::nullopt,
                     qp.seed};
}

std::unique_ptr<Objective> make_objective(const ProblemSpec& p) {
  if (const auto* q = std::get_if<QuadraticSpec>(&p.objective)) {
    return std::make_unique<QuadraticObjective>(
        QpProblem{q->kind, q->h, q->c, p.set, p.seed.value_or(0)});
  }
  if (const auto* pr = std::get_if<ProjectionSpec>(&p.objective)) {
    return std::make_unique<ProjectionObjective>(pr->y);
  }
  return std::make_unique<DoubleWellObjective>(std::get<DoubleWellSpec>(p.objective).c);
}

}  // namespace knapsack
