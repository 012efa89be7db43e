#include <benchmark/benchmark.h>

#include "medianprime/cascade.hpp"
#include "medianprime/exact.hpp"
#include "medianprime/primes.hpp"
#include "medianprime/saddle.hpp"

namespace mp = medianprime;

static void BM_SievePrimes(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mp::primes::sieve_primes(n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimes)->RangeMultiplier(10)->Range(100'000, 10'000'000)->Unit(benchmark::kMillisecond);

static void BM_ExactSum(benchmark::State& state) {
  mp::exact::SieveConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(1));
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mp::exact::exact_sum(x, mp::exact::MiddleMode::OMEGA, cfg, false).total);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactSum)->Args({1'000'000, 1})->Args({10'000'000, 1})->Args({10'000'000, 4})->Unit(benchmark::kMillisecond);

static void BM_SolveRho(benchmark::State& state) {
  const double xi = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mp::saddle::solve_rho(xi).rho);
}
BENCHMARK(BM_SolveRho)->Arg(100)->Arg(1'000'000)->Unit(benchmark::kMicrosecond);

// the cascade is rebuilt from scratch each iteration
static void BM_Cascade(benchmark::State& state) {
  const int J = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mp::series::cascade_R(J));
}
BENCHMARK(BM_Cascade)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
