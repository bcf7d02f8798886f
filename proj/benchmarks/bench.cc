#include <benchmark/benchmark.h>

#include <cmath>

#include "cdt/builtins.h"
#include "cdt/dual.h"
#include "cdt/oracle.h"
#include "cdt/solver.h"

namespace {

using cdt::Vector;

void BM_SolveExample1(benchmark::State& state) {
  const cdt::Problem p = cdt::MakeExample1();
  cdt::SolverConfig config;
  config.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cdt::FindCriticalPoints(p, {}, config));
}
BENCHMARK(BM_SolveExample1)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_SolveMsgao(benchmark::State& state) {
  const cdt::Problem p = cdt::MakeMsgao({std::sqrt(6.0) / 96.0});
  cdt::SolverConfig config;
  config.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cdt::FindCriticalPoints(p, {1, 2}, config));
}
BENCHMARK(BM_SolveMsgao)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

// Includes the eigen-decomposition done by DualPoint::Make.
void BM_DualValue(benchmark::State& state) {
  const cdt::Problem p = cdt::MakeMsgao({9.0 * std::sqrt(2.0) / 8.0});
  Vector lambda(2), sigma(3);
  lambda << 0.3, 0.7;
  sigma << 0.0, 0.0, -0.2;
  for (auto _ : state) {
    const cdt::DualPoint dp = cdt::DualPoint::Make(p, lambda, sigma);
    benchmark::DoNotOptimize(cdt::DualValue(p, dp));
  }
}
BENCHMARK(BM_DualValue);

void BM_OracleExample1(benchmark::State& state) {
  const cdt::Problem p = cdt::MakeExample1();
  cdt::OracleGrid grid;
  grid.steps = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(cdt::OracleMin(p, {}, grid, std::nullopt, 1));
}
BENCHMARK(BM_OracleExample1)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_OracleMsgao(benchmark::State& state) {
  const cdt::Problem p = cdt::MakeMsgao({std::sqrt(6.0) / 96.0});
  cdt::OracleGrid grid;
  grid.steps = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(cdt::OracleMin(p, {1, 2}, grid, std::nullopt, 0));
}
BENCHMARK(BM_OracleMsgao)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
