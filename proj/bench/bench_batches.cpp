#include <benchmark/benchmark.h>

#include "coeffbody/batch.hpp"
#include "coeffbody/kirillov.hpp"

using namespace coeffbody;

namespace {

void BM_ConservationSerial(benchmark::State& state) {
    auto cases = conservation_cases(static_cast<std::size_t>(state.range(0)), 6, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(conservation_batch_serial(cases, 3.0, 3000));
    }
}

void BM_ConservationParallel(benchmark::State& state) {
    auto cases = conservation_cases(static_cast<std::size_t>(state.range(0)), 6, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(conservation_batch(cases, 3.0, 3000));
    }
}

void BM_GeodesicSerial(benchmark::State& state) {
    auto cases = geodesic_cases(static_cast<std::size_t>(state.range(0)), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(geodesic_batch_serial(cases, 5.0, 20000));
    }
}

void BM_GeodesicParallel(benchmark::State& state) {
    auto cases = geodesic_cases(static_cast<std::size_t>(state.range(0)), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(geodesic_batch(cases, 5.0, 20000));
    }
}

Series sample_map() {
    return Series(std::vector<cd>{0.0, 1.0, {0.3, 0.1}, {-0.1, 0.2}, 0.05, {0.0, -0.02}, 0.01});
}

void BM_GoluzinSchifferSerial(benchmark::State& state) {
    auto f = sample_map();
    for (auto _ : state) {
        benchmark::DoNotOptimize(goluzin_schiffer_variation_serial(f, 2, 0.5, static_cast<std::size_t>(state.range(0))));
    }
}

void BM_GoluzinSchifferParallel(benchmark::State& state) {
    auto f = sample_map();
    for (auto _ : state) {
        benchmark::DoNotOptimize(goluzin_schiffer_variation(f, 2, 0.5, static_cast<std::size_t>(state.range(0))));
    }
}

}  // namespace

BENCHMARK(BM_ConservationSerial)->Arg(8)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConservationParallel)->Arg(8)->Arg(50)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GeodesicSerial)->Arg(4)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeodesicParallel)->Arg(4)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GoluzinSchifferSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GoluzinSchifferParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
