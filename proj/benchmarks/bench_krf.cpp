#include <benchmark/benchmark.h>

#include "krf/fermionic.hpp"
#include "krf/genseries.hpp"
#include "krf/qsystem.hpp"
#include "krf/sce.hpp"
#include "krf/series.hpp"

using namespace krf;

static void BM_SeriesMultiply(benchmark::State& state) {
  const CartanData c = build_cartan("A2");
  const int l = static_cast<int>(state.range(0));
  // A dense series filling the truncation box.
  const TruncatedSeries q = invert_unit(r_series(c, ModeMap::unit({0, 1}), l));
  for (auto _ : state) benchmark::DoNotOptimize(mul(q, q));
}
BENCHMARK(BM_SeriesMultiply)->Arg(2)->Arg(4)->Arg(8);

static void BM_RSeries(benchmark::State& state) {
  const CartanData c = build_cartan("B2");
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(r_series(c, ModeMap::parse_compact("1:1:1,2:1:1", 2), l));
}
BENCHMARK(BM_RSeries)->Arg(1)->Arg(2)->Arg(3);

static void BM_FermionicQTable(benchmark::State& state) {
  const CartanData c = build_cartan("G2");
  for (auto _ : state) benchmark::DoNotOptimize(fermionic_qtable(c, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FermionicQTable)->Arg(1)->Arg(2);

static void BM_MobiusCount(benchmark::State& state) {
  const CartanData c = build_cartan("A2");
  const SCEInstance inst =
      build_sce(c, ModeMap::parse_compact("1:1:4,2:1:2", 2), ModeMap::parse_compact("1:1:" + std::to_string(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(count_offdiagonal_mobius(inst));
}
BENCHMARK(BM_MobiusCount)->DenseRange(1, 4);

static void BM_GeneratingIdentities(benchmark::State& state) {
  const CartanData c = build_cartan("A2");
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_generating_identities(c, ModeMap::parse_compact("1:1:1", 2), 1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GeneratingIdentities)->Arg(2)->Arg(3);
BENCHMARK_MAIN();
