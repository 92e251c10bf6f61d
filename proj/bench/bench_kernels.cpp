// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "proglab/counting.hpp"
#include "proglab/gowers.hpp"
#include "proglab/signal.hpp"

using namespace proglab;

namespace {

ZFunc random_set(int64_t N, uint64_t seed) {
    Rng rng(seed);
    return random_subset(N, 0.3, rng).indicator();
}

void BM_lambda_w(benchmark::State& st) {
    const int64_t N = st.range(0);
    auto f = random_set(N, 1);
    auto ctx = ArithCtx::make(N, 2);
    for (auto _ : st) benchmark::DoNotOptimize(lambda_w(f, f, f, ctx));
}
void BM_lambda_w_serial(benchmark::State& st) {
    const int64_t N = st.range(0);
    auto f = random_set(N, 1);
    auto ctx = ArithCtx::make(N, 2);
    for (auto _ : st) benchmark::DoNotOptimize(lambda_w_serial(f, f, f, ctx));
}
void BM_lambda_model(benchmark::State& st) {
    const int64_t N = st.range(0);
    auto f = random_set(N, 2);
    auto ctx = ArithCtx::make(N, 2);
    for (auto _ : st) benchmark::DoNotOptimize(lambda_model(f, f, f, ctx));
}
void BM_lambda_model_serial(benchmark::State& st) {
    const int64_t N = st.range(0);
    auto f = random_set(N, 2);
    auto ctx = ArithCtx::make(N, 2);
    for (auto _ : st) benchmark::DoNotOptimize(lambda_model_serial(f, f, f, ctx));
}
void BM_fourier_sup(benchmark::State& st) {
    auto f = random_set(st.range(0), 3);
    for (auto _ : st) benchmark::DoNotOptimize(fourier_sup(f, 4 * f.length()));
}
void BM_fourier_sup_serial(benchmark::State& st) {
    auto f = random_set(st.range(0), 3);
    for (auto _ : st) benchmark::DoNotOptimize(fourier_sup_serial(f, 4 * f.length()));
}
void BM_box_norm(benchmark::State& st) {
    auto f = random_set(st.range(0), 4);
    BoxSpec spec{{interval_set(8), interval_set(8), interval_set(8)}};
    for (auto _ : st) benchmark::DoNotOptimize(box_norm_pow(f, spec));
}
void BM_box_norm_reference(benchmark::State& st) {
    auto f = random_set(st.range(0), 4);
    BoxSpec spec{{interval_set(8), interval_set(8), interval_set(8)}};
    for (auto _ : st) benchmark::DoNotOptimize(box_norm_pow_reference(f, spec));
}

}  // namespace

BENCHMARK(BM_lambda_w)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lambda_w_serial)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lambda_model)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lambda_model_serial)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fourier_sup)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fourier_sup_serial)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_box_norm)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_box_norm_reference)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
