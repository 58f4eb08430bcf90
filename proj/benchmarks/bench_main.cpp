#include <benchmark/benchmark.h>

#include "freecum/cumulants.hpp"
#include "freecum/generating.hpp"
#include "freecum/identities.hpp"
#include "freecum/maps.hpp"

using namespace fc;

static void BM_NsCensus(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ns({n, 2}));
}
BENCHMARK(BM_NsCensus)->Range(1, 5);

static void BM_FreeMoments(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(free_moments_p1(n));
}
BENCHMARK(BM_FreeMoments)->Range(2, 10);

static void BM_HigherMomentsAnalytic(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(higher_moments_analytic({n, 2}));
}
BENCHMARK(BM_HigherMomentsAnalytic)->Range(1, 4);

static void BM_TildeC2(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GenFun<KappaPoly> g(2, d);
    benchmark::DoNotOptimize(g.tildeC2_log(0, 1));
  }
}
BENCHMARK(BM_TildeC2)->RangeMultiplier(2)->Range(4, 16);

static void BM_TildeC3(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GenFun<KappaPoly> g(3, d);
    benchmark::DoNotOptimize(g.tildeC3_gen(0, 1, 2));
  }
}
BENCHMARK(BM_TildeC3)->RangeMultiplier(2)->Range(2, 8)->Unit(benchmark::kMillisecond);

static void BM_VerifySpecialized(benchmark::State& state) {
  VerifyOptions o;
  o.depth = static_cast<int>(state.range(0));
  o.mode = Mode::Specialized;
  o.seed = 42;
  for (auto _ : state) benchmark::DoNotOptimize(verify_identity("order1_of_order3", o));
}
BENCHMARK(BM_VerifySpecialized)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
