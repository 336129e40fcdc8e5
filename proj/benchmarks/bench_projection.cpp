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

#include "knapsack/problems.hpp"
#include "knapsack/projection.hpp"

namespace {

using namespace knapsack;

void run_projection(benchmark::State& state, SetKind kind, ProjectionOptions opts) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(17 + n);
  const KnapsackSet set = make_random_set(n, rng, kind);
  Vector y(n);
  for (auto& v : y) v = 2.0 * rng.normal();
  double evals = 0.0;
  for (auto _ : state) {
    ProjectionResult r = project(y, set, opts);
    benchmark::DoNotOptimize(r.z.data());
    evals += r.eval_count;
  }
  state.counters["evals"] = benchmark::Counter(evals, benchmark::Counter::kAvgIterations);
  state.SetComplexityN(state.range(0));
}

void BM_ProjectEquality(benchmark::State& state) {
  run_projection(state, SetKind::kEquality, {});
}

void BM_ProjectInterval(benchmark::State& state) {
  run_projection(state, SetKind::kInterval, {});
}

void BM_ProjectNoFreeze(benchmark::State& state) {
  ProjectionOptions opts;
  opts.freeze = false;
  run_projection(state, SetKind::kEquality, opts);
}

void BM_ProjectCompensated(benchmark::State& state) {
  ProjectionOptions opts;
  opts.summation = Summation::kCompensated;
  run_projection(state, SetKind::kEquality, opts);
}

}  // namespace

BENCHMARK(BM_ProjectEquality)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity(benchmark::oN);
BENCHMARK(BM_ProjectInterval)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity(benchmark::oN);
BENCHMARK(BM_ProjectNoFreeze)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity(benchmark::oN);
BENCHMARK(BM_ProjectCompensated)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity(benchmark::oN);

BENCHMARK_MAIN();
