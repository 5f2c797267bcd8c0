// Serial reference versus OpenMP kernels: grid sweep, multistart fit, sampling.
#include "rnmw/cli.hpp"
#include "rnmw/fit.hpp"
#include "rnmw/moments.hpp"
#include "rnmw/random.hpp"

#include <benchmark/benchmark.h>

namespace {

rnmw::GridSpec small_grid() {
    return rnmw::GridSpec{{0.1, 1.0, 0.3}, {0.1, 1.0, 0.3}, {0.1, 1.0, 0.3}};
}

void BM_SweepSerial(benchmark::State& st) {
    const auto g = small_grid();
    for (auto _ : st) benchmark::DoNotOptimize(rnmw::skew_kurt_grid_serial(g));
}
void BM_SweepParallel(benchmark::State& st) {
    const auto g = small_grid();
    for (auto _ : st) benchmark::DoNotOptimize(rnmw::skew_kurt_grid(g));
}

const rnmw::Dataset& aarset() {
    static const rnmw::Dataset ds = rnmw::cli::read_dataset(RNMW_DATA_DIR "/aarset.csv");
    return ds;
}

void BM_FitSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(rnmw::fit_mle_serial(aarset(), rnmw::Model::RNMW));
}
void BM_FitParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(rnmw::fit_mle(aarset(), rnmw::Model::RNMW));
}

std::vector<double> uniforms(std::size_t n) {
    rnmw::UniformStream s(7);
    return s.take(n);
}

void BM_SampleSerial(benchmark::State& st) {
    const auto u = uniforms(static_cast<std::size_t>(st.range(0)));
    const rnmw::RnmwParams p{0.1, 1e-3, 0.2};
    for (auto _ : st) benchmark::DoNotOptimize(rnmw::sample_serial(p, u));
}
void BM_SampleParallel(benchmark::State& st) {
    const auto u = uniforms(static_cast<std::size_t>(st.range(0)));
    const rnmw::RnmwParams p{0.1, 1e-3, 0.2};
    for (auto _ : st) benchmark::DoNotOptimize(rnmw::sample(p, u));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
