#include <benchmark/benchmark.h>

#include "bils/reorder.hpp"
#include "bils/search.hpp"
#include "bils/solver.hpp"
#include "harness/instance.hpp"

namespace {

bils::BilsProblem instance(std::size_t n) {
  bils::harness::InstanceSpec s;
  s.m = n;
  s.n = n;
  s.snr_db = 20.0;
  s.seed = bils::harness::derive_seed(2024, n);
  return bils::harness::generate(s).problem;
}

template <bils::Ordering O>
void BM_Reorder(benchmark::State& state) {
  const auto p = instance(static_cast<std::size_t>(state.range(0)));
  bils::FlopCounter flops;
  for (auto _ : state) {
    flops.units = 0;
    bils::ReorderOptions o;
    o.flops = &flops;
    benchmark::DoNotOptimize(bils::reduce_with(p, O, o));
  }
  state.counters["flops"] = static_cast<double>(flops.units);
}

template <bils::Ordering O>
void BM_Search(benchmark::State& state) {
  const auto reduced = bils::reduce_with(instance(static_cast<std::size_t>(state.range(0))), O);
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto r = bils::solve(reduced);
    nodes = r.stats.total_nodes();
    benchmark::DoNotOptimize(r.residual);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}

BENCHMARK(BM_Reorder<bils::Ordering::kNatural>)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_Reorder<bils::Ordering::kCh>)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_Reorder<bils::Ordering::kSw>)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_Reorder<bils::Ordering::kNew>)->RangeMultiplier(2)->Range(8, 128);

BENCHMARK(BM_Search<bils::Ordering::kNatural>)->DenseRange(8, 16, 4);
BENCHMARK(BM_Search<bils::Ordering::kNew>)->DenseRange(8, 16, 4);

}  // namespace

BENCHMARK_MAIN();
