// Serial reference vs OpenMP kernels on the flagship genus-one degree-one case.
#include <benchmark/benchmark.h>

#include "kgw/contributions.hpp"
#include "kgw/fjrw_formal.hpp"

namespace {

kgw::GraphSumRequest flagship() { return kgw::GraphSumRequest{}; }

void graph_sum(benchmark::State& state, kgw::Execution exec) {
    const auto ld = kgw::compute_loop_data(4, 5);
    const auto graphs = kgw::enumerate_graphs(1, 0, 1, 4);
    const auto params = kgw::make_engine_params(ld, 41, 1);
    for (auto _ : state) benchmark::DoNotOptimize(kgw::sum_over_graphs(graphs, params, exec));
}

void conjugate_sweep(benchmark::State& state, kgw::Execution exec) {
    for (auto _ : state) benchmark::DoNotOptimize(kgw::conjugate_sweep(flagship(), exec));
}

void b41(benchmark::State& state, kgw::Execution exec) {
    const auto bundle = kgw::parse_bundle("a:1,b:-1");
    for (auto _ : state) benchmark::DoNotOptimize(kgw::b41_combination(bundle, {1, -4, 16, -64, 256}, 4, 41, exec));
}

}  // namespace

BENCHMARK_CAPTURE(graph_sum, serial, kgw::Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(graph_sum, parallel, kgw::Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(conjugate_sweep, serial, kgw::Execution::serial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(conjugate_sweep, parallel, kgw::Execution::parallel)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(b41, serial, kgw::Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(b41, parallel, kgw::Execution::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
