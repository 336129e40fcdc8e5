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

#include "knapsack_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "knapsack/asa.hpp"
#include "knapsack/json_io.hpp"
#include "knapsack/log.hpp"
#include "knapsack/problems.hpp"
#include "knapsack/projection.hpp"
#include "knapsack/suite.hpp"
#include "knapsack/topopt.hpp"
#include "knapsack_cli/settings.hpp"

namespace knapsack::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Writes to --out when given, else to out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) throw UsageError("cannot write " + path);
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

void emit(const json& j, const std::string& path, std::ostream& out) {
  Sink sink(path, out);
  sink.stream() << j.dump(2) << '\n';
}

Settings load_settings(const std::string& config_path) {
  Settings s;
  if (!config_path.empty()) apply_json(s, read_json_file(config_path));
  return s;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e9) {
      throw UsageError("--sizes: bad entry '" + item + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError("--sizes: empty list");
  return out;
}

// ---- project --------------------------------------------------------------

struct ProjectArgs {
  std::string set_path;
  std::string point_path;
  std::optional<double> eps;
  std::string config;
  std::string out;
};

int cmd_project(const ProjectArgs& a, std::ostream& out) {
  Settings s = load_settings(a.config);
  if (a.eps) s.projection.eps = *a.eps;
  const KnapsackSet set = set_from_json(read_json_file(a.set_path), "set");
  const json pj = read_json_file(a.point_path);
  const bool wrapped = pj.is_object();
  if (wrapped && !pj.contains("y")) throw JsonFieldError("point.y", "missing");
  const Vector y = vector_from_json(wrapped ? pj["y"] : pj, wrapped ? "point.y" : "point");
  if (y.size() != set.size()) {
    throw JsonFieldError(wrapped ? "point.y" : "point",
                         "expected " + std::to_string(set.size()) + " entries");
  }
  const ProjectionResult r = project(y, set, s.projection);
  json j;
  j["z"] = r.z;
  j["lambda"] = r.lambda;
  j["evals"] = r.eval_count;
  j["config"] = {{"projection", to_json(s.projection)}};
  emit(j, a.out, out);
  return 0;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string problem;
  std::string mode = "auto";
  std::optional<double> tol;
  std::optional<std::size_t> max_cycles;
  std::string trace;
  std::string config;
  std::string out;
};

const char* face_of(const KnapsackSet& set, std::span<const double> x) {
  if (set.is_equality()) return "equality";
  const Interval iv = set.interval();
  const double ax = dot(set.a(), x);
  const double tl = linear_tolerance(set, x, std::max(std::abs(iv.lo), std::abs(iv.hi)));
  if (std::abs(ax - iv.lo) <= tl) return "lower";
  if (std::abs(ax - iv.hi) <= tl) return "upper";
  return "interior";
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Settings s = load_settings(a.config);
  if (a.tol) s.asa.tol = *a.tol;
  if (a.max_cycles) s.asa.max_cycles = *a.max_cycles;
  s.asa.validate();
  s.spg.validate();

  const ProblemSpec p = problem_from_json(read_json_file(a.problem));
  const std::size_t n = p.set.size();
  if ((a.mode == "equality" && !p.set.is_equality()) ||
      ((a.mode == "interval" || a.mode == "three") && !p.set.is_interval())) {
    throw UsageError("--mode " + a.mode + " does not match the problem's set");
  }
  auto obj = make_objective(p);
  const Vector x0 = p.x0 ? *p.x0 : Vector(n, 0.0);

  const auto t0 = Clock::now();
  AsaResult r;
  std::string face;
  int solves = 1;
  if (a.mode == "three") {
    ThreeSolveResult t = solve_interval_by_three(*obj, p.set, x0, s.asa, s.spg, s.rcgd, s.projection);
    r = std::move(t.result);
    face = to_string(t.which);
    solves = t.solves;
  } else {
    r = asa_solve(*obj, FeasibleRegion(p.set, s.projection), x0, s.asa, s.spg, s.rcgd);
    face = face_of(p.set, r.x);
  }
  const double ms = elapsed_ms(t0);

  if (!a.trace.empty()) {
    Sink sink(a.trace, out);
    write_phase_trace_csv(sink.stream(), r.trace);
  }
  json j;
  j["x"] = r.x;
  j["f"] = r.f;
  j["norm_d1"] = r.norm_d1;
  j["status"] = to_string(r.status);
  j["which_face"] = face;
  j["cycles"] = r.cycles;
  j["phases"] = r.trace.size();
  j["solves"] = solves;
  j["degenerate"] = r.degenerate;
  j["n_f"] = r.n_f;
  j["n_g"] = r.n_g;
  j["mode"] = a.mode;
  j["config"] = {{"asa", to_json(s.asa)},
                 {"spg", to_json(s.spg)},
                 {"rcgd", to_json(s.rcgd)},
                 {"projection", to_json(s.projection)}};
  j["timing"] = {{"wall_ms", ms}};
  emit(j, a.out, out);
  log::info("solve: " + std::string(to_string(r.status)) + " after " +
            std::to_string(r.cycles) + " cycles");
  return r.status == AsaStatus::kConverged ? 0 : 1;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string type = "quadratic";
  std::size_t n = 10;
  std::uint64_t seed = 1;
  std::string hessian = "dense";
  std::string set = "equality";
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const HessianKind hk = a.hessian == "dense" ? HessianKind::kDenseSpd : HessianKind::kDiagonal;
  const SetKind sk = a.set == "equality" ? SetKind::kEquality : SetKind::kInterval;
  ProblemSpec p{KnapsackSet({0.0}, {1.0}, {1.0}, Equality{0.5}), ProjectionSpec{}, std::nullopt, a.seed};
  if (a.type == "quadratic") {
    p = problem_from_qp(make_random_qp(a.n, a.seed, hk, sk));
  } else if (a.type == "planted") {
    p = problem_from_qp(make_planted_qp(a.n, a.seed, hk).qp);
  } else {
    Rng rng(a.seed);
    p.set = make_random_set(a.n, rng, sk);
    Vector v(a.n);
    if (a.type == "projection") {
      for (auto& e : v) e = 3.0 * rng.normal();
      p.objective = ProjectionSpec{std::move(v)};
    } else {
      for (auto& e : v) e = 0.3 * rng.normal();
      p.objective = DoubleWellSpec{std::move(v)};
    }
  }
  p.seed = a.seed;
  emit(problem_to_json(p), a.out, out);
  return 0;
}

// ---- topopt ---------------------------------------------------------------

struct TopoArgs {
  std::optional<std::size_t> grid;
  std::optional<double> r;
  std::optional<double> kalpha;
  std::optional<double> kbeta;
  std::optional<std::size_t> maxiter;
  bool use_asa = false;
  std::string out_prefix = "topopt";
  std::string config;
  std::string out;
};

int cmd_topopt(const TopoArgs& a, std::ostream& out) {
  Settings s = load_settings(a.config);
  TopoSettings& t = s.topopt;
  if (a.grid) t.grid = *a.grid;
  if (a.r) t.volume_fraction = *a.r;
  if (a.kalpha) t.k_alpha = *a.kalpha;
  if (a.kbeta) t.k_beta = *a.kbeta;
  if (a.maxiter) t.max_cycles = *a.maxiter;
  if (a.use_asa) t.use_asa = true;

  TopoProblem p;
  p.grid = t.grid;
  p.volume_fraction = t.volume_fraction;
  p.k_alpha = t.k_alpha;
  p.k_beta = t.k_beta;
  p.pcg_tol = t.pcg_tol;
  p.validate();
  TopoConfig cfg;
  cfg.max_cycles = t.max_cycles;
  cfg.rel_change_tol = t.rel_change_tol;
  cfg.spg = s.spg;
  cfg.spg.tol = 0.0;
  cfg.use_asa = t.use_asa;
  cfg.asa = s.asa;

  const auto t0 = Clock::now();
  const TopoResult r = optimize_topology(p, {}, cfg);
  const double ms = elapsed_ms(t0);

  const std::string grid_path = a.out_prefix + "_w.txt";
  const std::string vtk_path = a.out_prefix + "_w.vtk";
  const std::string hist_path = a.out_prefix + "_history.csv";
  {
    Sink g(grid_path, out);
    write_grid_text(g.stream(), r.w, p.grid);
    Sink v(vtk_path, out);
    write_vtk(v.stream(), r.w, p.grid);
    Sink h(hist_path, out);
    write_history_csv(h.stream(), r.history);
  }
  double worst_volume = 0.0;
  for (const TopoCycle& c : r.history) worst_volume = std::max(worst_volume, c.volume_residual);
  json j;
  j["converged"] = r.converged;
  j["cycles"] = r.history.size() - 1;
  j["J_initial"] = r.history.front().J;
  j["J_final"] = r.history.back().J;
  j["max_volume_residual"] = worst_volume;
  j["files"] = {{"grid", grid_path}, {"vtk", vtk_path}, {"history", hist_path}};
  j["config"] = {{"topopt", to_json(t)}, {"spg", to_json(cfg.spg)}};
  if (t.use_asa) j["config"]["asa"] = to_json(s.asa);
  j["timing"] = {{"wall_ms", ms}};
  emit(j, a.out, out);
  return r.converged ? 0 : 1;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string suite = "projection";
  std::string sizes = "1e3,1e4,1e5";
  std::uint64_t seed = 7;
  std::size_t jobs = 1;
  std::size_t reps = 5;
  std::string config;
  std::string out;
};

template <class F>
void parallel_for(std::size_t count, std::size_t jobs, F&& f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) f(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < std::min(jobs, count); ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  Settings s = load_settings(a.config);
  if (a.jobs == 0 || a.reps == 0) throw UsageError("--jobs and --reps must be >= 1");
  const std::vector<std::size_t> sizes = parse_sizes(a.sizes);
  Sink sink(a.out, out);
  std::ostream& os = sink.stream();
  json echo = {{"suite", a.suite}, {"seed", a.seed}, {"sizes", sizes}, {"reps", a.reps}, {"jobs", a.jobs}};

  if (a.suite == "projection") {
    echo["projection"] = to_json(s.projection);
    std::vector<std::string> rows(sizes.size());
    parallel_for(sizes.size(), a.jobs, [&](std::size_t k) {
      const std::size_t n = sizes[k];
      Rng rng(a.seed * 1000003ULL + n);
      const KnapsackSet set = make_random_set(n, rng, SetKind::kEquality);
      std::vector<double> ns, evals;
      for (std::size_t r = 0; r < a.reps; ++r) {
        Vector y(n);
        for (auto& v : y) v = 2.0 * rng.normal();
        const auto t0 = Clock::now();
        const ProjectionResult res = project(y, set, s.projection);
        ns.push_back(std::chrono::duration<double, std::nano>(Clock::now() - t0).count());
        evals.push_back(res.eval_count);
      }
      std::ostringstream line;
      line << n << ',' << static_cast<long long>(median_of(ns)) << ',' << median_of(evals);
      rows[k] = line.str();
    });
    os << "# " << echo.dump() << '\n' << "n,median_ns,evals\n";
    for (const auto& r : rows) os << r << '\n';
    return 0;
  }
  if (a.suite != "solvers") throw UsageError("--suite must be projection or solvers");

  echo["asa"] = to_json(s.asa);
  echo["spg"] = to_json(s.spg);
  echo["rcgd"] = to_json(s.rcgd);
  const std::vector<SuiteCase> suite = solver_suite(sizes, a.seed);
  std::vector<std::string> rows(suite.size());
  std::atomic<bool> all_converged{true};
  parallel_for(suite.size(), a.jobs, [&](std::size_t k) {
    const SuiteCase& c = suite[k];
    auto obj = make_objective(c.problem);
    const std::size_t n = c.problem.set.size();
    const auto t0 = Clock::now();
    const AsaResult r = asa_solve(*obj, FeasibleRegion(c.problem.set, s.projection), Vector(n, 0.0),
                                  s.asa, s.spg, s.rcgd);
    const double ns = std::chrono::duration<double, std::nano>(Clock::now() - t0).count();
    if (r.status != AsaStatus::kConverged) all_converged = false;
    std::ostringstream line;
    line.precision(17);
    line << c.name << ',' << n << ',' << to_string(r.status) << ',' << r.f << ',' << r.norm_d1 << ','
         << r.cycles << ',' << r.trace.size() << ',' << r.n_f << ',' << r.n_g << ','
         << static_cast<long long>(ns);
    rows[k] = line.str();
  });
  os << "# " << echo.dump() << '\n' << "name,n,status,f,norm_d1,cycles,phases,n_f,n_g,wall_ns\n";
  for (const auto& r : rows) os << r << '\n';
  return all_converged ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  log::set_level(log::level_from_env());
  CLI::App app{"Optimization over continuous knapsack sets"};
  app.require_subcommand(1);

  ProjectArgs pa;
  auto* project_cmd = app.add_subcommand("project", "Project a point onto a knapsack set");
  project_cmd->add_option("--set", pa.set_path, "Set JSON")->required();
  project_cmd->add_option("--point", pa.point_path, "Point JSON: [..] or {\"y\": [..]}")->required();
  project_cmd->add_option("--eps", pa.eps, "Root-finder tolerance");
  project_cmd->add_option("--config", pa.config, "Settings JSON");
  project_cmd->add_option("--out", pa.out, "Output file (default stdout)");

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Minimize an objective over a knapsack set");
  solve_cmd->add_option("--problem", sa.problem, "Problem JSON")->required();
  solve_cmd->add_option("--mode", sa.mode, "auto, equality, interval or three")
      ->check(CLI::IsMember({"auto", "equality", "interval", "three"}));
  solve_cmd->add_option("--tol", sa.tol, "Tolerance on |d1(x)|_inf");
  solve_cmd->add_option("--max-cycles", sa.max_cycles, "SPG/RCGD cycle limit");
  solve_cmd->add_option("--trace", sa.trace, "Phase trace CSV path");
  solve_cmd->add_option("--config", sa.config, "Settings JSON");
  solve_cmd->add_option("--out", sa.out, "Output file (default stdout)");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random problem JSON");
  gen_cmd->add_option("--type", ga.type, "quadratic, planted, projection or double_well")
      ->check(CLI::IsMember({"quadratic", "planted", "projection", "double_well"}));
  gen_cmd->add_option("--n", ga.n, "Dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", ga.seed, "Seed");
  gen_cmd->add_option("--hessian", ga.hessian, "dense or diagonal")
      ->check(CLI::IsMember({"dense", "diagonal"}));
  gen_cmd->add_option("--set", ga.set, "equality or interval")
      ->check(CLI::IsMember({"equality", "interval"}));
  gen_cmd->add_option("--out", ga.out, "Output file (default stdout)");

  TopoArgs ta;
  auto* topo_cmd = app.add_subcommand("topopt", "Two-material heat conduction design");
  topo_cmd->add_option("--grid", ta.grid, "Cells per side")->check(CLI::PositiveNumber);
  topo_cmd->add_option("--R", ta.r, "Volume fraction of material beta");
  topo_cmd->add_option("--kalpha", ta.kalpha, "Conductivity of material alpha");
  topo_cmd->add_option("--kbeta", ta.kbeta, "Conductivity of material beta");
  topo_cmd->add_option("--maxiter", ta.maxiter, "Cycle limit");
  topo_cmd->add_flag("--use-asa", ta.use_asa, "Use the SPG/RCGD driver");
  topo_cmd->add_option("--out-prefix", ta.out_prefix, "Prefix for grid, VTK and history files");
  topo_cmd->add_option("--config", ta.config, "Settings JSON");
  topo_cmd->add_option("--out", ta.out, "Summary file (default stdout)");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark sweep to CSV");
  bench_cmd->add_option("--suite", ba.suite, "projection or solvers")
      ->check(CLI::IsMember({"projection", "solvers"}));
  bench_cmd->add_option("--sizes", ba.sizes, "Comma-separated sizes, e.g. 1e3,1e4");
  bench_cmd->add_option("--seed", ba.seed, "Seed");
  bench_cmd->add_option("--jobs", ba.jobs, "Parallel instances");
  bench_cmd->add_option("--reps", ba.reps, "Repetitions per size (projection)");
  bench_cmd->add_option("--config", ba.config, "Settings JSON");
  bench_cmd->add_option("--out", ba.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*project_cmd) return cmd_project(pa, out);
    if (*solve_cmd) return cmd_solve(sa, out);
    if (*gen_cmd) return cmd_gen(ga, out);
    if (*topo_cmd) return cmd_topopt(ta, out);
    return cmd_bench(ba, out);
  } catch (const JsonFieldError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::kInvalidArgument ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace knapsack::cli
