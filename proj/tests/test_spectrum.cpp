#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "perint/spectrum.hpp"
#include "support.hpp"

using namespace perint;
using namespace perint::testsupport;

TEST_CASE("detrend_mean basics") {
    CHECK(detrend_mean(std::vector<double>{1, 1, 1}) ==
          std::vector<double>{0, 0, 0});
    CHECK(detrend_mean(std::vector<double>{0, 2}) == std::vector<double>{-1, 1});
    CHECK_THROWS_AS(detrend_mean(std::vector<double>{}), Error);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist(3.0, 2.0);
    std::vector<double> values(257);
    for (double& v : values) v = dist(rng);
    const auto out = detrend_mean(values);
    const double mean =
        std::accumulate(out.begin(), out.end(), 0.0) / out.size();
    CHECK(std::abs(mean) < 1e-12);
}

TEST_CASE("fft_periodogram of a constant window is all zeros") {
    TimeSeries s;
    for (int i = 0; i < 32; ++i) {
        s.timestamps.push_back(i * 3600.0);
        s.values.push_back(5.0);
    }
    const Spectrum spec = fft_periodogram(s);
    for (double p : spec.powers) CHECK(p == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fft_periodogram concentrates a bin-aligned sinusoid in one bin") {
    // 168 hourly samples, one cycle per 24 samples: exactly bin k=7.
    TimeSeries s;
    for (int i = 0; i < 168; ++i) {
        s.timestamps.push_back(i * 3600.0);
        s.values.push_back(std::sin(2.0 * std::numbers::pi * i / 24.0));
    }
    const Spectrum spec = fft_periodogram(s);
    const std::size_t peak = static_cast<std::size_t>(
        std::max_element(spec.powers.begin(), spec.powers.end()) -
        spec.powers.begin());
    CHECK(spec.frequencies[peak] == doctest::Approx(1.0 / hours(24)).epsilon(1e-12));
    CHECK(spec.powers[peak] >= 0.99 * spec.total_power);
    // Closed form for an on-grid tone of amplitude A: |X_k|^2/n = A^2 n / 4.
    CHECK(spec.powers[peak] == doctest::Approx(168.0 / 4.0).epsilon(1e-9));
}

TEST_CASE("fft_periodogram two-tone amplitude ratio, checked against direct DFT") {
    TimeSeries s;
    for (int i = 0; i < 168; ++i) {
        s.timestamps.push_back(i * 3600.0);
        s.values.push_back(std::sin(2.0 * std::numbers::pi * i / 24.0) +
                           0.5 * std::sin(2.0 * std::numbers::pi * i / 12.0));
    }
    const Spectrum spec = fft_periodogram(s);
    const double p24 = spec.powers[6];   // k = 7
    const double p12 = spec.powers[13];  // k = 14
    CHECK(p24 / p12 == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(relative_diff(p24, dft_bin_power(s.values, 7)) < 1e-9);
    CHECK(relative_diff(p12, dft_bin_power(s.values, 14)) < 1e-9);
}

TEST_CASE("fft_periodogram rejects short and uneven windows") {
    TimeSeries tiny;
    for (int i = 0; i < 5; ++i) {
        tiny.timestamps.push_back(i * 1.0);
        tiny.values.push_back(0.0);
    }
    CHECK_THROWS_WITH_AS(fft_periodogram(tiny),
                         doctest::Contains("TooFewSamples"), Error);

    const TimeSeries uneven = make_uneven(64, 60.0, 11);
    CHECK_THROWS_WITH_AS(fft_periodogram(uneven),
                         doctest::Contains("UnevenSampling"), Error);
}

TEST_CASE("lomb_scargle_power of a constant window is zero") {
    TimeSeries s;
    for (int i = 0; i < 16; ++i) {
        s.timestamps.push_back(i * 3600.0);
        s.values.push_back(3.3);
    }
    CHECK(lomb_scargle_power(s, 1.0 / hours(24)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("lomb_scargle_power argument checks") {
    const TimeSeries s = make_uneven(32, 60.0, 3);
    CHECK_THROWS_WITH_AS(lomb_scargle_power(s, 0.0),
                         doctest::Contains("NonPositiveFrequency"), Error);
    TimeSeries tiny = s;
    tiny.timestamps.resize(4);
    tiny.values.resize(4);
    CHECK_THROWS_WITH_AS(lomb_scargle_power(tiny, 1.0),
                         doctest::Contains("TooFewSamples"), Error);
}

TEST_CASE("Lomb-Scargle equals the FFT bin power on even sampling") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> n_dist(16, 256);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t n = n_dist(rng);
        std::uniform_int_distribution<std::size_t> k_dist(1, n / 2 - 1);
        const std::size_t k = k_dist(rng);
        TimeSeries s;
        std::normal_distribution<double> noise(0.0, 0.3);
        for (std::size_t i = 0; i < n; ++i) {
            s.timestamps.push_back(static_cast<double>(i) * 60.0);
            s.values.push_back(
                std::sin(2.0 * std::numbers::pi * static_cast<double>(i * k) / n) +
                noise(rng));
        }
        const Spectrum spec = fft_periodogram(s);
        const double ls = lomb_scargle_power(s, spec.frequencies[k - 1]);
        CHECK(relative_diff(ls, spec.powers[k - 1]) < 1e-6);
    }
}

TEST_CASE("Lomb-Scargle matches the least-squares sinusoid fit oracle") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> f_dist(1e-5, 1e-3);
    for (int iter = 0; iter < 50; ++iter) {
        const TimeSeries s = make_uneven(100, 120.0, 1000 + iter);
        const double f = f_dist(rng);
        CHECK(relative_diff(lomb_scargle_power(s, f), sinusoid_fit_power(s, f)) <
              1e-9);
    }
}

TEST_CASE("Lomb-Scargle is invariant to sample order") {
    TimeSeries s = make_uneven(64, 300.0, 5);
    const double before = lomb_scargle_power(s, 1.0 / hours(24));
    // Reverse the sample order; the sums do not care.
    std::reverse(s.timestamps.begin(), s.timestamps.end());
    std::reverse(s.values.begin(), s.values.end());
    const double after = lomb_scargle_power(s, 1.0 / hours(24));
    CHECK(relative_diff(before, after) < 1e-12);
}

TEST_CASE("offset invariance and scale equivariance of both estimators") {
    const TimeSeries even = make_sinusoid(0.0, days(7), hours(1), hours(24), 1.0,
                                          0.4, 0.2, 42);
    const TimeSeries uneven = make_uneven(128, 1800.0, 21);
    const double f = 1.0 / hours(24);

    for (const TimeSeries* base : {&even, &uneven}) {
        TimeSeries shifted = *base;
        for (double& v : shifted.values) v += 17.5;
        TimeSeries scaled = *base;
        for (double& v : scaled.values) v *= -3.0;

        const double p = lomb_scargle_power(*base, f);
        CHECK(relative_diff(lomb_scargle_power(shifted, f), p) < 1e-9);
        CHECK(relative_diff(lomb_scargle_power(scaled, f), 9.0 * p) < 1e-9);
    }

    const Spectrum spec = fft_periodogram(even);
    TimeSeries shifted = even;
    for (double& v : shifted.values) v += 17.5;
    const Spectrum spec2 = fft_periodogram(shifted);
    for (std::size_t i = 0; i < spec.powers.size(); ++i) {
        CHECK(relative_diff(spec.powers[i], spec2.powers[i]) < 1e-9);
    }
}

TEST_CASE("band_energy on the default hourly 7-day grid picks exactly one bin") {
    const TimeSeries s = make_sinusoid(0.0, hours(167), hours(1), hours(24));
    REQUIRE(s.size() == 168);
    const Spectrum spectrum = fft_periodogram(s);
    WindowSpec spec;
    // Default 0.01 h tolerance: only the 24 h bin (neighbours sit at 28 h
    // and 21 h) qualifies.
    CHECK(band_energy(spectrum, spec) == doctest::Approx(spectrum.powers[6]));

    WindowSpec wide = spec;
    wide.period_tolerance = hours(5);
    CHECK(band_energy(spectrum, wide) ==
          doctest::Approx(spectrum.powers[5] + spectrum.powers[6] +
                          spectrum.powers[7]));
}

TEST_CASE("band_energy falls back to the nearest-period bin") {
    const TimeSeries s = make_sinusoid(0.0, hours(167), hours(1), hours(24));
    const Spectrum spectrum = fft_periodogram(s);
    WindowSpec spec;
    spec.target_period = hours(23.5);  // off-grid, nothing within 0.01 h
    CHECK(band_energy(spectrum, spec) == doctest::Approx(spectrum.powers[6]));
}

TEST_CASE("band_energy rejects an empty spectrum") {
    WindowSpec spec;
    CHECK_THROWS_WITH_AS(band_energy(Spectrum{}, spec),
                         doctest::Contains("EmptySpectrum"), Error);
}

TEST_CASE("circadian window: band energy at 24 h dwarfs 168 h") {
    const TimeSeries s =
        make_sinusoid(0.0, days(7), minutes(30), hours(24), 1.0, 0.0, 0.05, 8);
    WindowSpec daily;
    daily.method = Method::LombScargle;
    WindowSpec weekly;
    weekly.target_period = hours(168);
    weekly.window_length = days(14);  // keep the spec valid
    weekly.method = Method::LombScargle;
    const double at24 = band_energy_lomb_scargle(s, daily);
    const double at168 = band_energy_lomb_scargle(s, weekly);
    CHECK(at24 > 100.0 * at168);
}

TEST_CASE("moderate missing data barely moves the 24 h Lomb-Scargle power") {
    const TimeSeries full =
        make_sinusoid(0.0, days(7), minutes(30), hours(24), 1.0, 0.0, 0.1, 17);
    std::mt19937_64 rng(55);
    TimeSeries thinned;
    std::bernoulli_distribution keep(0.8);
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (!keep(rng)) continue;
        thinned.timestamps.push_back(full.timestamps[i]);
        thinned.values.push_back(full.values[i]);
    }
    const double f = 1.0 / hours(24);
    const double p_full = lomb_scargle_power(full, f) / full.size();
    const double p_thin = lomb_scargle_power(thinned, f) / thinned.size();
    CHECK(relative_diff(p_full, p_thin) < 0.10);
}
