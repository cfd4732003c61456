#include <benchmark/benchmark.h>

#include "wva/montecarlo.hpp"
#include "wva/stochastic.hpp"

namespace {

using namespace wva;

struct Setting {
    InterferometerParams params;
    stochastic::NoisePrior prior;
};

Setting setting() {
    const auto prior = stochastic::NoisePrior::vacuum(10.0);
    auto params = InterferometerParams::make(0.1, BeamSplitterMode::FirstOrder);
    params.eta = stochastic::default_eta(params, prior);
    return {params, prior};
}

void BM_ReferenceRejection(benchmark::State& state) {
    const auto s = setting();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::reference::estimate_shift_rejection(s.params, s.prior, n, 1));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_ParallelRejection(benchmark::State& state) {
    const auto s = setting();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::estimate_shift_rejection(s.params, s.prior, {n, 1, workers}));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_ReferenceWeighted(benchmark::State& state) {
    const auto s = setting();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::reference::estimate_shift_weighted(s.params, s.prior, n, 1));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_ParallelWeighted(benchmark::State& state) {
    const auto s = setting();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::estimate_shift_weighted(s.params, s.prior, {n, 1, workers}));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

}  // namespace

BENCHMARK(BM_ReferenceRejection)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelRejection)->Args({1 << 20, 1})->Args({1 << 20, 2})->Args({1 << 20, 4})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ReferenceWeighted)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelWeighted)->Args({1 << 20, 1})->Args({1 << 20, 2})->Args({1 << 20, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
