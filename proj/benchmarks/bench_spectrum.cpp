#include <benchmark/benchmark.h>

#include "jcfluor/oracle.hpp"
#include "jcfluor/spectrum.hpp"

namespace {

using namespace jcfluor;

const SystemParams kParams = make_params(0.0, 0.3, 1.0, 0.1);

void bm_transition_lines(benchmark::State& state) {
    const auto dist = coherent_distribution(static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(spectrum::transition_lines(dist, kParams, 0.9));
}
BENCHMARK(bm_transition_lines)->Arg(1)->Arg(10)->Arg(50);

void bm_evaluate_spectrum(benchmark::State& state) {
    const auto dist = coherent_distribution(10.0);
    const auto lines = spectrum::transition_lines(dist, kParams, 0.9);
    const auto grid = spectrum::make_grid(-10.0, 10.0, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            spectrum::evaluate_spectrum(lines, grid, kParams.gamma, kParams.lambda_c));
}
BENCHMARK(bm_evaluate_spectrum)->Arg(401)->Arg(4001);

void bm_correlation_avg(benchmark::State& state) {
    const auto dist = thermal_distribution(10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(spectrum::correlation_avg(7.3, dist, kParams, 0.9));
}
BENCHMARK(bm_correlation_avg);

void bm_propagator(benchmark::State& state) {
    const auto ops = oracle::make_operator_set(static_cast<int>(state.range(0)), 0);
    const auto h = oracle::build_hse(ops, kParams, 0.9);
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::Propagator(h));
}
BENCHMARK(bm_propagator)->Arg(20)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void bm_numeric_pipeline(benchmark::State& state) {
    const auto dist = coherent_distribution(1.0);
    const auto grid = spectrum::make_grid(-10.0, 10.0, 201);
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::effective_spectrum_numeric(kParams, 0.9, dist, grid));
}
BENCHMARK(bm_numeric_pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
