// Copyright 2026 The recfr Authors.
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

#include <random>
#include <vector>

#include "recfr/bootstrap.hpp"
#include "recfr/game.hpp"
#include "recfr/rsv.hpp"
#include "recfr/solver.hpp"
#include "recfr/tree_values.hpp"

namespace recfr {
namespace {

void BM_SolveRsvScalar(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::vector<double>> instances(256, std::vector<double>(state.range(0)));
  for (auto& values : instances) {
    for (double& v : values) v = unit(rng);
  }
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_rsv_scalar(instances[k++ % instances.size()], 0.1));
  }
}
BENCHMARK(BM_SolveRsvScalar)->Arg(2)->Arg(3)->Arg(8);

void BM_CfrIteration(benchmark::State& state, const char* name) {
  CfrSolver solver(build_game(name));
  for (auto _ : state) benchmark::DoNotOptimize(solver.iterate());
}
BENCHMARK_CAPTURE(BM_CfrIteration, kuhn, "kuhn");
BENCHMARK_CAPTURE(BM_CfrIteration, leduc, "leduc");

void BM_RecfrIteration(benchmark::State& state, const char* name, LambdaMode mode) {
  LambdaSchedule schedule;
  schedule.mode = mode;
  RecfrSolver solver(build_game(name), schedule);
  for (auto _ : state) benchmark::DoNotOptimize(solver.iterate());
}
BENCHMARK_CAPTURE(BM_RecfrIteration, leduc_corollary, "leduc", LambdaMode::kCorollary);
BENCHMARK_CAPTURE(BM_RecfrIteration, leduc_cfr_equivalent, "leduc", LambdaMode::kCfrEquivalent);

void BM_BootstrapIteration(benchmark::State& state) {
  BootstrapConfig config;
  config.games_per_iteration = static_cast<int>(state.range(0));
  BootstrapSolver solver(build_game("leduc"), config);
  for (auto _ : state) benchmark::DoNotOptimize(solver.iterate());
  state.SetItemsProcessed(state.iterations() * state.range(0) * kNumPlayers);
}
BENCHMARK(BM_BootstrapIteration)->Arg(100)->Arg(1000);

void BM_Exploitability(benchmark::State& state, const char* name) {
  const auto game = build_game(name);
  const SuccessorIndex successors(*game);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  StrategyProfile profile = StrategyProfile::uniform(*game);
  for (int i = 0; i < game->num_infosets(); ++i) {
    double sum = 0.0;
    for (double& p : profile[i]) sum += (p = unit(rng));
    for (double& p : profile[i]) p /= sum;
  }
  for (auto _ : state) benchmark::DoNotOptimize(exploitability(*game, successors, profile));
}
BENCHMARK_CAPTURE(BM_Exploitability, kuhn, "kuhn");
BENCHMARK_CAPTURE(BM_Exploitability, leduc, "leduc");

}  // namespace
}  // namespace recfr

BENCHMARK_MAIN();
