#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "wecopt/fitness.hpp"
#include "wecopt/numerics.hpp"

namespace {

wecopt::Layout grid_layout(std::size_t n, double spacing) {
    const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    wecopt::Layout l;
    for (std::size_t i = 0; i < n; ++i)
        l.push_back({static_cast<double>(i % cols) * spacing, static_cast<double>(i / cols) * spacing});
    return l;
}

void BM_RegularWavePower(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const wecopt::Layout layout = grid_layout(n, 80.0);
    const wecopt::WecParameters params;
    for (auto _ : state) benchmark::DoNotOptimize(wecopt::farm_power_regular(layout, params, 0.7, 0.3).total);
}
BENCHMARK(BM_RegularWavePower)->Arg(1)->Arg(4)->Arg(16);

void BM_FarmEvaluation(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const wecopt::FarmEvaluator ev({}, wecopt::builtin_scenario("simplified"), wecopt::FarmArea::for_buoys(n));
    const wecopt::Layout layout = grid_layout(n, 80.0);
    for (auto _ : state) benchmark::DoNotOptimize(ev.power(layout).total);
}
BENCHMARK(BM_FarmEvaluation)->Arg(2)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SiteEvaluation(benchmark::State& state) {
    const wecopt::FarmEvaluator ev({}, wecopt::builtin_scenario("perth"), wecopt::FarmArea::for_buoys(16));
    const wecopt::Layout layout = grid_layout(16, 80.0);
    for (auto _ : state) benchmark::DoNotOptimize(ev.power(layout).total);
}
BENCHMARK(BM_SiteEvaluation)->Unit(benchmark::kMillisecond);

void BM_MaxDistancePoint(benchmark::State& state) {
    const wecopt::Layout layout = grid_layout(12, 100.0);
    std::mt19937_64 rng(7);
    for (auto _ : state)
        benchmark::DoNotOptimize(wecopt::max_distance_point(layout.positions(), wecopt::Box::square(565.0), rng));
}
BENCHMARK(BM_MaxDistancePoint);

}  // namespace
BENCHMARK_MAIN();
