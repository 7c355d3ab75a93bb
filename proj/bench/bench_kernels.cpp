#include <benchmark/benchmark.h>

#include "curvgraph/generators.hpp"
#include "curvgraph/semigroup.hpp"
#include "curvgraph/sweep.hpp"

using namespace curvgraph;

static void BM_HeatApplySerial(benchmark::State& state) {
    const auto g = hex_torus(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    const HeatOperator h(g);
    const auto f = random_functions(g.size(), 1, 1)[0];
    for (auto _ : state) benchmark::DoNotOptimize(h.apply_serial(0.5, f));
    state.SetLabel("n=" + std::to_string(g.size()));
}
BENCHMARK(BM_HeatApplySerial)->Arg(6)->Arg(12)->Arg(20);

static void BM_HeatApplyParallel(benchmark::State& state) {
    const auto g = hex_torus(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    const HeatOperator h(g);
    const auto f = random_functions(g.size(), 1, 1)[0];
    for (auto _ : state) benchmark::DoNotOptimize(h.apply(0.5, f));
    state.SetLabel("n=" + std::to_string(g.size()));
}
BENCHMARK(BM_HeatApplyParallel)->Arg(6)->Arg(12)->Arg(20);

static void BM_LinearSweep(benchmark::State& state) {
    const auto g = hex_torus(6, 6);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_linear(g, 1, jobs));
}
BENCHMARK(BM_LinearSweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_DefectSweep(benchmark::State& state) {
    const auto g = hex_torus(6, 6);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_defect(g, 2, jobs));
}
BENCHMARK(BM_DefectSweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
