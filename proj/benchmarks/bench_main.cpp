#include <benchmark/benchmark.h>

#include "flextile/assembly.hpp"
#include "flextile/matrix.hpp"
#include "flextile/multigraph.hpp"
#include "flextile/search.hpp"
#include "flextile/tiles.hpp"

using namespace flextile;

static void BM_CanonicalFormWheel(benchmark::State& state) {
    const Multigraph g = wheel(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(canonical_form(g));
    }
}
BENCHMARK(BM_CanonicalFormWheel)->DenseRange(5, 12, 1);

static void BM_Hamiltonian(benchmark::State& state) {
    const Multigraph g = wheel(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_hamiltonian(g));
    }
}
BENCHMARK(BM_Hamiltonian)->DenseRange(6, 12, 2);

static void BM_MinOrderWheelPot(benchmark::State& state) {
    const Pot pot = wheel_pot_s3(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_order(pot));
    }
}
BENCHMARK(BM_MinOrderWheelPot)->DenseRange(4, 12, 2);

static void BM_EnumerateSpokePot(benchmark::State& state) {
    const Pot pot = wheel_pot_s12(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_complexes(pot, UsageVector{6, 1}));
    }
}
BENCHMARK(BM_EnumerateSpokePot)->Unit(benchmark::kMillisecond);

static void BM_VerifyScenarioThree(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Pot pot = wheel_pot_s3(n);
    const Multigraph target = wheel(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_scenario(pot, target, 3));
    }
}
BENCHMARK(BM_VerifyScenarioThree)->DenseRange(4, 8, 1)->Unit(benchmark::kMillisecond);

static void BM_SearchMinimaPruned(benchmark::State& state) {
    SearchSpec spec;
    spec.target = wheel(static_cast<int>(state.range(0)));
    spec.scenario = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_minima(spec));
    }
}
BENCHMARK(BM_SearchMinimaPruned)->DenseRange(5, 7, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
