#ifndef PERINT_TESTS_SUPPORT_HPP
#define PERINT_TESTS_SUPPORT_HPP

// Shared synthetic-data generators and independent oracles for the test
// suites. Oracles here deliberately avoid the library's computation paths:
// the DFT is the direct O(n^2) sum and the sinusoid fit solves the normal
// equations.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "perint/timeseries.hpp"

namespace perint::testsupport {

inline TimeSeries make_sinusoid(Instant start, Duration span, Duration dt,
                                Duration period, double amplitude = 1.0,
                                double phase = 0.0, double noise_sigma = 0.0,
                                std::uint64_t seed = 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    TimeSeries s;
    const auto n = static_cast<std::size_t>(std::floor(span / dt + 1e-9)) + 1;
    s.timestamps.reserve(n);
    s.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Instant t = start + static_cast<double>(i) * dt;
        double v = amplitude *
                   std::sin(2.0 * std::numbers::pi * t / period + phase);
        if (noise_sigma > 0.0) v += noise(rng);
        s.timestamps.push_back(t);
        s.values.push_back(v);
    }
    return s;
}

inline TimeSeries make_uneven(std::size_t n, Duration mean_gap,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(1.0 / mean_gap);
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

/// Direct O(n^2) DFT power of mean-detrended values: |X_k|^2 / n.
inline double dft_bin_power(const std::vector<double>& values, std::size_t k) {
    const std::size_t n = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double angle = -2.0 * std::numbers::pi *
                             static_cast<double>(j) * static_cast<double>(k) /
                             static_cast<double>(n);
        acc += (values[j] - mean) * std::polar(1.0, angle);
    }
    return std::norm(acc) / static_cast<double>(n);
}

/// Half the chi-squared reduction of the best least-squares fit of
/// a*cos(wt) + b*sin(wt) to the mean-detrended values, via the normal
/// equations.
inline double sinusoid_fit_power(const TimeSeries& s, double frequency) {
    const std::size_t n = s.size();
    double mean = 0.0;
    for (double v : s.values) mean += v;
    mean /= static_cast<double>(n);
    const double omega = 2.0 * std::numbers::pi * frequency;
    double scc = 0.0, scs = 0.0, sss = 0.0, syc = 0.0, sys = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(omega * s.timestamps[i]);
        const double si = std::sin(omega * s.timestamps[i]);
        const double y = s.values[i] - mean;
        scc += c * c;
        scs += c * si;
        sss += si * si;
        syc += y * c;
        sys += y * si;
    }
    const double det = scc * sss - scs * scs;
    if (std::abs(det) < 1e-12) return 0.0;
    const double a = (sss * syc - scs * sys) / det;
    const double b = (scc * sys - scs * syc) / det;
    // chi^2 reduction = y.yhat for a least-squares fit
    return 0.5 * (a * syc + b * sys);
}

inline double relative_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

/// Random rotation matrix from a normalized quaternion.
inline std::array<std::array<double, 3>, 3> random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double q[4];
    double norm2 = 0.0;
    for (double& qi : q) {
        qi = normal(rng);
        norm2 += qi * qi;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    const double w = q[0] * inv, x = q[1] * inv, y = q[2] * inv, z = q[3] * inv;
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

}  // namespace perint::testsupport

#endif
