#include <benchmark/benchmark.h>

#include "sonoqed/bubble.hpp"
#include "sonoqed/mode_rule.hpp"

using namespace sonoqed;

namespace {

void totals(benchmark::State& state, bool parallel) {
    const auto g = build_geometry_from_kr(500e-9, 1.3, static_cast<double>(state.range(0)), 1.0);
    const MediumTransition gas(2e4, 1.0, 1e-15);
    FiniteSpectrumConfig cfg;
    cfg.parallel = parallel;
    for (auto _ : state) benchmark::DoNotOptimize(totals_finite(gas, g, cfg).photon_count);
}

void rule(benchmark::State& state, bool parallel) {
    for (auto _ : state) {
        ModeRule r(static_cast<int>(state.range(0)), 25.0, 1.3, 1e-3, 0.8, {}, parallel);
        benchmark::DoNotOptimize(r.nodes().size());
    }
}

} // namespace

BENCHMARK_CAPTURE(totals, serial, false)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(totals, parallel, true)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(rule, serial, false)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(rule, parallel, true)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
