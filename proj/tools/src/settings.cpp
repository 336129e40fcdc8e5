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

#include "knapsack_cli/settings.hpp"

#include <initializer_list>
#include <string>

#include "knapsack/json_io.hpp"

namespace knapsack::cli {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& path,
                    std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw JsonFieldError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw JsonFieldError(path + "." + it.key(), "unknown key");
  }
}

void read(const json& j, const std::string& path, const char* key, double& out) {
  if (j.contains(key)) out = number_from_json(j[key], path + "." + key);
}

void read(const json& j, const std::string& path, const char* key, std::size_t& out) {
  if (!j.contains(key)) return;
  const json& v = j[key];
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw JsonFieldError(path + "." + key, "expected a non-negative integer");
  }
  out = v.get<std::size_t>();
}

void read(const json& j, const std::string& path, const char* key, int& out) {
  std::size_t v = static_cast<std::size_t>(out);
  read(j, path, key, v);
  out = static_cast<int>(v);
}

void read(const json& j, const std::string& path, const char* key, bool& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_boolean()) throw JsonFieldError(path + "." + key, "expected true or false");
  out = j[key].get<bool>();
}

void apply_asa(AsaConfig& c, const json& j) {
  const std::string p = "config.asa";
  require_object(j, p, {"exp_a", "exp_b", "mu", "rho", "repeat_limit", "tol",
                        "max_cycles", "undecided_inf_norm", "face_tol_ratio"});
  read(j, p, "exp_a", c.exp_a);
  read(j, p, "exp_b", c.exp_b);
  read(j, p, "mu", c.mu);
  read(j, p, "rho", c.rho);
  read(j, p, "repeat_limit", c.repeat_limit);
  read(j, p, "tol", c.tol);
  read(j, p, "max_cycles", c.max_cycles);
  read(j, p, "undecided_inf_norm", c.undecided_inf_norm);
  read(j, p, "face_tol_ratio", c.face_tol_ratio);
}

void apply_spg(SpgConfig& c, const json& j) {
  const std::string p = "config.spg";
  require_object(j, p, {"gamma", "memory", "alpha_min", "alpha_max", "sigma1", "sigma2",
                        "sigma_neg_curv", "max_iter", "tol", "max_backtracks"});
  read(j, p, "gamma", c.gamma);
  read(j, p, "memory", c.memory);
  read(j, p, "alpha_min", c.alpha_min);
  read(j, p, "alpha_max", c.alpha_max);
  read(j, p, "sigma1", c.sigma1);
  read(j, p, "sigma2", c.sigma2);
  read(j, p, "sigma_neg_curv", c.sigma_neg_curv);
  read(j, p, "max_iter", c.max_iter);
  read(j, p, "tol", c.tol);
  read(j, p, "max_backtracks", c.max_backtracks);
}

void apply_rcgd(RcgdConfig& c, const json& j) {
  const std::string p = "config.rcgd";
  require_object(j, p, {"eta", "tol", "max_iter", "wolfe"});
  read(j, p, "eta", c.eta);
  read(j, p, "tol", c.tol);
  read(j, p, "max_iter", c.max_iter);
  if (j.contains("wolfe")) {
    const json& w = j["wolfe"];
    const std::string pw = p + ".wolfe";
    require_object(w, pw, {"delta", "sigma", "max_evaluations", "approx_eps"});
    read(w, pw, "delta", c.wolfe.delta);
    read(w, pw, "sigma", c.wolfe.sigma);
    read(w, pw, "max_evaluations", c.wolfe.max_evaluations);
    read(w, pw, "approx_eps", c.wolfe.approx_eps);
  }
}

void apply_projection(ProjectionOptions& c, const json& j) {
  const std::string p = "config.projection";
  require_object(j, p, {"eps", "summation", "freeze", "interval_shortcut", "minimal_step"});
  read(j, p, "eps", c.eps);
  read(j, p, "freeze", c.freeze);
  read(j, p, "interval_shortcut", c.interval_shortcut);
  read(j, p, "minimal_step", c.minimal_step);
  if (j.contains("summation")) {
    const json& v = j["summation"];
    if (v == "naive") {
      c.summation = Summation::kNaive;
    } else if (v == "compensated") {
      c.summation = Summation::kCompensated;
    } else {
      throw JsonFieldError(p + ".summation", "expected \"naive\" or \"compensated\"");
    }
  }
}

void apply_topopt(TopoSettings& c, const json& j) {
  const std::string p = "config.topopt";
  require_object(j, p, {"grid", "R", "kalpha", "kbeta", "maxiter", "rel_change_tol",
                        "pcg_tol", "use_asa"});
  read(j, p, "grid", c.grid);
  read(j, p, "R", c.volume_fraction);
  read(j, p, "kalpha", c.k_alpha);
  read(j, p, "kbeta", c.k_beta);
  read(j, p, "maxiter", c.max_cycles);
  read(j, p, "rel_change_tol", c.rel_change_tol);
  read(j, p, "pcg_tol", c.pcg_tol);
  read(j, p, "use_asa", c.use_asa);
}

}  // namespace

void apply_json(Settings& s, const json& j) {
  require_object(j, "config", {"asa", "spg", "rcgd", "projection", "topopt"});
  if (j.contains("asa")) apply_asa(s.asa, j["asa"]);
  if (j.contains("spg")) apply_spg(s.spg, j["spg"]);
  if (j.contains("rcgd")) apply_rcgd(s.rcgd, j["rcgd"]);
  if (j.contains("projection")) apply_projection(s.projection, j["projection"]);
  if (j.contains("topopt")) apply_topopt(s.topopt, j["topopt"]);
}

json to_json(const AsaConfig& c) {
  return {{"exp_a", c.exp_a},
          {"exp_b", c.exp_b},
          {"mu", c.mu},
          {"rho", c.rho},
          {"repeat_limit", c.repeat_limit},
          {"tol", c.tol},
          {"max_cycles", c.max_cycles},
          {"undecided_inf_norm", c.undecided_inf_norm},
          {"face_tol_ratio", c.face_tol_ratio}};
}

json to_json(const SpgConfig& c) {
  return {{"gamma", c.gamma},       {"memory", c.memory},
          {"alpha_min", c.alpha_min}, {"alpha_max", c.alpha_max},
          {"sigma1", c.sigma1},     {"sigma2", c.sigma2},
          {"sigma_neg_curv", c.sigma_neg_curv},
          {"max_iter", c.max_iter}, {"tol", c.tol},
          {"max_backtracks", c.max_backtracks}};
}

json to_json(const RcgdConfig& c) {
  return {{"eta", c.eta},
          {"tol", c.tol},
          {"max_iter", c.max_iter},
          {"wolfe",
           {{"delta", c.wolfe.delta},
            {"sigma", c.wolfe.sigma},
            {"max_evaluations", c.wolfe.max_evaluations},
            {"approx_eps", c.wolfe.approx_eps}}}};
}

json to_json(const ProjectionOptions& c) {
  return {{"eps", c.eps},
          {"summation", c.summation == Summation::kNaive ? "naive" : "compensated"},
          {"freeze", c.freeze},
          {"interval_shortcut", c.interval_shortcut},
          {"minimal_step", c.minimal_step}};
}

json to_json(const TopoSettings& c) {
  return {{"grid", c.grid},
          {"R", c.volume_fraction},
          {"kalpha", c.k_alpha},
          {"kbeta", c.k_beta},
          {"maxiter", c.max_cycles},
          {"rel_change_tol", c.rel_change_tol},
          {"pcg_tol", c.pcg_tol},
          {"use_asa", c.use_asa}};
}

}  // namespace knapsack::cli
