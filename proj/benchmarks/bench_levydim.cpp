// Microbenchmarks for the hot paths: stable sampling, trajectory simulation,
// box counting, and tail-index estimation.
#include <vector>

#include <benchmark/benchmark.h>

#include "levydim/boxdim.hpp"
#include "levydim/process.hpp"
#include "levydim/rng.hpp"
#include "levydim/stable.hpp"
#include "levydim/tail_index.hpp"

namespace {

using namespace levydim;

void BM_SampleSas(benchmark::State& state) {
    const StableParams params(static_cast<double>(state.range(0)) / 100.0, 1.0);
    RngStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_sas(params, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleSas)->Arg(100)->Arg(150)->Arg(200);

void BM_SimulateLevy(benchmark::State& state) {
    const auto spec = MultivariateStableSpec::elliptic(2, 1.5);
    const double step = 1.0 / static_cast<double>(state.range(0));
    RngStream rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_levy(spec, 1.0, step, rng));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateLevy)->Arg(1000)->Arg(10000);

void BM_EstimateDimension(benchmark::State& state) {
    RngStream rng(3);
    const Trajectory traj = simulate_levy(MultivariateStableSpec::elliptic(2, 1.5), 1.0,
                                          1.0 / static_cast<double>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_dimension(traj));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateDimension)->Arg(10000)->Arg(100000);

void BM_EstimateAlpha(benchmark::State& state) {
    const StableParams params(1.5, 1.0);
    RngStream rng(4);
    std::vector<double> samples(static_cast<std::size_t>(state.range(0)));
    for (auto& v : samples) v = sample_sas(params, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_alpha(samples, 316));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateAlpha)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
