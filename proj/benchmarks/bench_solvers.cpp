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

#include <benchmark/benchmark.h>

#include <array>

#include "knapsack/asa.hpp"
#include "knapsack/problems.hpp"
#include "knapsack/suite.hpp"

namespace {

using namespace knapsack;

// One benchmark per suite case, registered at startup.
void run_case(benchmark::State& state, const SuiteCase& c) {
  auto obj = make_objective(c.problem);
  const FeasibleRegion region(c.problem.set, ProjectionOptions{});
  const Vector x0(c.problem.set.size(), 0.0);
  const AsaConfig cfg;
  std::size_t cycles = 0;
  for (auto _ : state) {
    AsaResult r = asa_solve(*obj, region, x0, cfg, SpgConfig{}, RcgdConfig{});
    benchmark::DoNotOptimize(r.f);
    cycles = r.cycles;
    if (r.status != AsaStatus::kConverged) state.SkipWithError("not converged");
  }
  state.counters["cycles"] = static_cast<double>(cycles);
}

const int registered = [] {
  static const std::array<std::size_t, 3> sizes{100, 1000, 10000};
  static const std::vector<SuiteCase> suite = solver_suite(sizes, 7);
  for (const SuiteCase& c : suite) {
    benchmark::RegisterBenchmark(("asa/" + c.name).c_str(), run_case, c)->Unit(benchmark::kMillisecond);
  }
  return 0;
}();

}  // namespace

BENCHMARK_MAIN();
