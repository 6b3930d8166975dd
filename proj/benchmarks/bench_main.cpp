#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "perint/intensity.hpp"
#include "perint/preprocess.hpp"
#include "perint/spectrum.hpp"

using namespace perint;

namespace {

TimeSeries hourly_sine(int days_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.3);
    TimeSeries s;
    for (int i = 0; i <= days_count * 24; ++i) {
        const Instant t = i * hours(1);
        s.timestamps.push_back(t);
        s.values.push_back(
            std::sin(2.0 * std::numbers::pi * t / hours(24)) + noise(rng));
    }
    return s;
}

TimeSeries uneven_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(1.0 / 60.0);
    std::normal_distribution<double> value(0.0, 1.0);
    TimeSeries s;
    Instant t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t += gap(rng) + 1e-3;
        s.timestamps.push_back(t);
        s.values.push_back(value(rng));
    }
    return s;
}

void BM_LombScarglePower(benchmark::State& state) {
    const TimeSeries s = uneven_series(static_cast<std::size_t>(state.range(0)), 7);
    const double frequency = 4.0 / s.span();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lomb_scargle_power(s, frequency));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LombScarglePower)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_FftPeriodogram(benchmark::State& state) {
    TimeSeries s;
    std::mt19937_64 rng(9);
    std::normal_distribution<double> value(0.0, 1.0);
    for (int i = 0; i < state.range(0); ++i) {
        s.timestamps.push_back(i * 60.0);
        s.values.push_back(value(rng));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fft_periodogram(s));
    }
}
BENCHMARK(BM_FftPeriodogram)->Range(128, 8192);

void BM_IntensityTrace90Days(benchmark::State& state) {
    const TimeSeries s = hourly_sine(90, 3);
    WindowSpec spec;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_intensity_trace(s, spec));
    }
}
BENCHMARK(BM_IntensityTrace90Days)->Unit(benchmark::kMillisecond);

void BM_BandpassFilter(benchmark::State& state) {
    const double rate = 12.5;
    TimeSeries s;
    std::mt19937_64 rng(4);
    std::normal_distribution<double> value(0.0, 0.2);
    for (int i = 0; i < state.range(0); ++i) {
        s.timestamps.push_back(i / rate);
        s.values.push_back(1.0 + value(rng));
    }
    const FilterDesign design = design_bandpass(4, 0.5, 20.0, rate);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_filter(design, s));
    }
}
BENCHMARK(BM_BandpassFilter)->Range(1 << 12, 1 << 18);

}  // namespace

BENCHMARK_MAIN();
