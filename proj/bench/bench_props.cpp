// Serial reference vs OpenMP runner for the theorem checks, plus the hot kernels.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "asyncmodel/props.hpp"

using namespace asyncmodel;

namespace {

const std::vector<std::string> ids{"1.9", "4.3", "4.5", "4.8", "6.4"};

void run(benchmark::State& state, Execution exec) {
  const auto& id = ids[static_cast<std::size_t>(state.range(0))];
  GenConfig cfg;
  cfg.cases = 100;
  for (auto _ : state) {
    auto r = run_theorem(id, cfg, exec);
    benchmark::DoNotOptimize(r.failures.size());
  }
  state.SetLabel(id);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.cases));
}

void BM_TheoremSerial(benchmark::State& state) { run(state, Execution::serial); }
void BM_TheoremParallel(benchmark::State& state) { run(state, Execution::parallel); }

BENCHMARK(BM_TheoremSerial)->DenseRange(0, static_cast<int>(ids.size()) - 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoremParallel)->DenseRange(0, static_cast<int>(ids.size()) - 1)->Unit(benchmark::kMillisecond);

void BM_WindowAll(benchmark::State& state) {
  GenConfig cfg;
  cfg.max_transitions = static_cast<int>(state.range(0));
  Gen gen(cfg, 7);
  const auto x = gen.signal();
  for (auto _ : state) benchmark::DoNotOptimize(window_all(x, Rat(3, 2), Rat(1, 2)));
}
BENCHMARK(BM_WindowAll)->Arg(4)->Arg(12)->Arg(20);

void BM_BlcMembership(benchmark::State& state) {
  GenConfig cfg;
  Gen gen(cfg, 11);
  const auto i = blc(BoolFn::and_n(3), BoolFn::or_n(3), {Rat(1), Rat(2), Rat(1), Rat(3)});
  const auto u = gen.multisignal(3);
  const auto x = i.sample(u, 1, 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(i.contains(u, x));
}
BENCHMARK(BM_BlcMembership);

}  // namespace

BENCHMARK_MAIN();
