#include <benchmark/benchmark.h>

#include "natquant/analysis.hpp"
#include "natquant/solver.hpp"

namespace {

using namespace natquant;

void BM_SolveSingle(benchmark::State& state) {
  const auto d = paper_fixture("distA").dist;
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_n_means(d, n));
  }
}
BENCHMARK(BM_SolveSingle)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveRange(benchmark::State& state) {
  const auto d = paper_fixture("distB").dist;
  const auto n_to = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_range(d, 2, n_to));
  }
}
BENCHMARK(BM_SolveRange)->Arg(8)->Arg(16)->Arg(32);

void BM_BruteForce(benchmark::State& state) {
  const auto d = paper_fixture("distA").dist;
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_n_means(d, n, 20));
  }
}
BENCHMARK(BM_BruteForce)->Arg(2)->Arg(4)->Arg(6);

void BM_TailMoments(benchmark::State& state) {
  const auto d = paper_fixture("geometric").dist;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.tail_moments(64));
  }
}
BENCHMARK(BM_TailMoments);

}  // namespace

BENCHMARK_MAIN();
