#include <benchmark/benchmark.h>

#include "romanoff/arith.hpp"
#include "romanoff/ledger.hpp"
#include "romanoff/primes.hpp"
#include "romanoff/quadroots.hpp"
#include "romanoff/repcount.hpp"

using namespace romanoff;

static void BM_SievePrimes(benchmark::State& state) {
  const auto x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(x).count());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x));
}
BENCHMARK(BM_SievePrimes)->Arg(1'000'000)->Arg(10'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

static void BM_RepresentationStats(benchmark::State& state) {
  RepRequest req;
  req.limit = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(representation_stats(req).represented);
}
BENCHMARK(BM_RepresentationStats)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_CountRoots(benchmark::State& state) {
  u64 m = 1'000'003;
  i64 a = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_roots(a, m));
    a = (a + 7919) % 1'000'000;
    m += 2;
  }
}
BENCHMARK(BM_CountRoots);

static void BM_MultOrder(benchmark::State& state) {
  u64 d = 1'000'000'001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mult_order(2, d).order);
    d += 2;
  }
}
BENCHMARK(BM_MultOrder);

static void BM_S1Partial(benchmark::State& state) {
  const auto d = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(s1_partial(d).term_count);
}
BENCHMARK(BM_S1Partial)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_K2Count(benchmark::State& state) {
  u64 d = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_k2_solutions(d, 7, 3, 5, 100));
    d = d >= 9'999 ? 3 : d + 2;
  }
}
BENCHMARK(BM_K2Count);

BENCHMARK_MAIN();
