// Parallel kernels vs their serial reference implementations.
#include <benchmark/benchmark.h>

#include "mwsieve/cache.hpp"
#include "mwsieve/cli.hpp"
#include "mwsieve/model.hpp"
#include "mwsieve/quadpoint.hpp"

using namespace mwsieve;

namespace {

const CurveModelData& model53() {
    static CurveModelData m = load_model_from_string(builtin_model_53());
    return m;
}

void BM_enumerate(benchmark::State& state) {
    const i64 ell = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_C_points(model53(), ell));
    }
}

void BM_enumerate_serial(benchmark::State& state) {
    const i64 ell = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_C_points_serial(model53(), ell));
    }
}

void BM_local_data(benchmark::State& state) {
    const i64 ell = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_local_data(model53(), ell));
    }
}

void BM_local_data_serial(benchmark::State& state) {
    const i64 ell = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_local_data_serial(model53(), ell));
    }
}

void BM_count_points(benchmark::State& state) {
    WeierstrassCurve c = reduce_curve(model53(), state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_points(c));
    }
}

void BM_count_points_serial(benchmark::State& state) {
    WeierstrassCurve c = reduce_curve(model53(), state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_points_serial(c));
    }
}

// Per-d fan-out of the table rows over a warm cache; argument = worker count
// (0 = all cores).
void BM_table_rows(benchmark::State& state) {
    static LocalDataCache cache(model53());
    static bool warmed = [] {
        for (i64 ell : primes_below(1000)) {
            if (cache.usable(ell)) cache.get(ell);
        }
        return true;
    }();
    benchmark::DoNotOptimize(warmed);
    SieveConfig cfg;
    cfg.workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_table(cache, 50, 3, cfg));
    }
}

}  // namespace

BENCHMARK(BM_enumerate)->Arg(199)->Arg(499)->Arg(997)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_serial)->Arg(199)->Arg(499)->Arg(997)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_local_data)->Arg(199)->Arg(499)->Arg(997)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_local_data_serial)->Arg(199)->Arg(499)->Arg(997)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_points)->Arg(99991)->Arg(999983)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_points_serial)->Arg(99991)->Arg(999983)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_table_rows)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
