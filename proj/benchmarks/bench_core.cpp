#include <benchmark/benchmark.h>

#include "qspacing/ensembles.hpp"
#include "qspacing/fitting.hpp"
#include "qspacing/spectral.hpp"
#include "qspacing/surmise.hpp"

using namespace qspacing;

static void BM_Pdf(benchmark::State& state) {
    const SpacingLaw law{SymmetryClass(1), EntropicIndex(0.5)};
    double s = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(law.pdf(s));
        s = s > 2.0 ? 0.0 : s + 1e-3;
    }
}
BENCHMARK(BM_Pdf);

static void BM_Cdf(benchmark::State& state) {
    const SpacingLaw law{SymmetryClass(1), EntropicIndex(0.5)};
    double s = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(law.cdf(s));
        s = s > 2.0 ? 0.0 : s + 1e-3;
    }
}
BENCHMARK(BM_Cdf);

static void BM_Quantile(benchmark::State& state) {
    const SpacingLaw law{SymmetryClass(2), EntropicIndex(0.3)};
    double p = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(law.quantile(p));
        p = p > 0.98 ? 0.01 : p + 0.0137;
    }
}
BENCHMARK(BM_Quantile);

static void BM_Eigenvalues(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    const auto h = sample_goe(GaussianEnsembleConfig{SymmetryClass(1), dim, 1.0, 7});
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h));
}
BENCHMARK(BM_Eigenvalues)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_Unfold(benchmark::State& state) {
    const auto spectrum = ho_spectrum(OscillatorConfig{0.70710678118654752, static_cast<std::size_t>(state.range(0)), 1.0});
    for (auto _ : state) benchmark::DoNotOptimize(unfold(spectrum));
}
BENCHMARK(BM_Unfold)->Arg(200)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_FitLs(benchmark::State& state) {
    OracleConfig cfg;
    cfg.q = EntropicIndex(0.5);
    cfg.samples = 10000;
    const auto hist = histogram(sample_tsallis_2x2(cfg), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(fit_q_ls(hist, SymmetryClass(1)));
}
BENCHMARK(BM_FitLs)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
