#include "perint/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

namespace perint {
namespace {

double median_gap(const std::vector<Instant>& ts) {
    std::vector<double> gaps;
    gaps.reserve(ts.size() - 1);
    for (std::size_t i = 1; i < ts.size(); ++i) gaps.push_back(ts[i] - ts[i - 1]);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    return gaps[gaps.size() / 2];
}

// FFTW plan creation is not reentrant; plans are cached per length and
// reused via a guarded scratch-free execute (new-array interface).
class FftwCache {
public:
    void transform(std::vector<double>& in, std::vector<std::complex<double>>& out) {
        std::lock_guard<std::mutex> lock(mutex_);
        const std::size_t n = in.size();
        auto it = plans_.find(n);
        if (it == plans_.end()) {
            std::vector<double> tmp(n);
            std::vector<std::complex<double>> tmp_out(n / 2 + 1);
            fftw_plan plan = fftw_plan_dft_r2c_1d(
                static_cast<int>(n), tmp.data(),
                reinterpret_cast<fftw_complex*>(tmp_out.data()),
                FFTW_ESTIMATE | FFTW_UNALIGNED);
            it = plans_.emplace(n, plan).first;
        }
        out.resize(n / 2 + 1);
        fftw_execute_dft_r2c(it->second, in.data(),
                             reinterpret_cast<fftw_complex*>(out.data()));
    }

    ~FftwCache() {
        for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> plans_;
};

FftwCache& fftw_cache() {
    static FftwCache cache;
    return cache;
}

}  // namespace

std::vector<double> detrend_mean(std::span<const double> values) {
    if (values.empty()) {
        throw Error(ErrorKind::EmptyInput, "cannot detrend an empty list");
    }
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) /
        static_cast<double>(values.size());
    std::vector<double> out(values.begin(), values.end());
    for (double& v : out) v -= mean;
    return out;
}

bool is_evenly_sampled(const TimeSeries& window) {
    if (window.size() < 2) return true;
    const double med = median_gap(window.timestamps);
    if (!(med > 0.0)) return false;
    for (std::size_t i = 1; i < window.size(); ++i) {
        const double gap = window.timestamps[i] - window.timestamps[i - 1];
        if (std::abs(gap - med) > 0.01 * med) return false;
    }
    return true;
}

Spectrum fft_periodogram(const TimeSeries& window) {
    const std::size_t n = window.size();
    if (n < 8) {
        throw Error(ErrorKind::TooFewSamples, "need at least 8 samples");
    }
    if (!is_evenly_sampled(window)) {
        throw Error(ErrorKind::UnevenSampling,
                    "window is not evenly sampled; use Lomb-Scargle");
    }
    const double dt = median_gap(window.timestamps);

    std::vector<double> detrended = detrend_mean(window.values);
    std::vector<std::complex<double>> coeffs;
    fftw_cache().transform(detrended, coeffs);

    Spectrum spec;
    const std::size_t half = n / 2;
    spec.frequencies.reserve(half);
    spec.powers.reserve(half);
    double total = 0.0;
    for (std::size_t k = 1; k <= half; ++k) {
        spec.frequencies.push_back(static_cast<double>(k) /
                                   (static_cast<double>(n) * dt));
        const double p = std::norm(coeffs[k]) / static_cast<double>(n);
        spec.powers.push_back(p);
        total += p;
    }
    spec.total_power = total;
    return spec;
}

double lomb_scargle_power(const TimeSeries& window, double frequency) {
    const std::size_t n = window.size();
    if (n < 8) {
        throw Error(ErrorKind::TooFewSamples, "need at least 8 samples");
    }
    if (!(frequency > 0.0)) {
        throw Error(ErrorKind::NonPositiveFrequency, "frequency must be positive");
    }
    const double omega = 2.0 * M_PI * frequency;

    std::vector<double> y = detrend_mean(window.values);

    // tan(2wt) = sum sin(2wt_i) / sum cos(2wt_i)
    double s2 = 0.0, c2 = 0.0;
    for (Instant t : window.timestamps) {
        s2 += std::sin(2.0 * omega * t);
        c2 += std::cos(2.0 * omega * t);
    }
    const double tau = std::atan2(s2, c2) / (2.0 * omega);

    double yc = 0.0, ys = 0.0, cc = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double arg = omega * (window.timestamps[i] - tau);
        const double c = std::cos(arg);
        const double s = std::sin(arg);
        yc += y[i] * c;
        ys += y[i] * s;
        cc += c * c;
        ss += s * s;
    }

    double power = 0.0;
    if (cc > 1e-12 * static_cast<double>(n)) power += yc * yc / cc;
    if (ss > 1e-12 * static_cast<double>(n)) power += ys * ys / ss;
    return 0.5 * power;
}

double band_energy(const Spectrum& spectrum, const WindowSpec& spec) {
    spec.validate();
    if (spectrum.frequencies.empty()) {
        throw Error(ErrorKind::EmptySpectrum, "spectrum has no bins");
    }
    double sum = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i) {
        const double period = 1.0 / spectrum.frequencies[i];
        if (std::abs(spec.target_period - period) < spec.period_tolerance) {
            sum += spectrum.powers[i];
            any = true;
        }
    }
    if (any) return sum;

    // No bin within tolerance: fall back to the nearest-period bin.
    std::size_t best = 0;
    double best_diff = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i) {
        const double diff = std::abs(spec.target_period - 1.0 / spectrum.frequencies[i]);
        if (diff < best_diff) {
            best_diff = diff;
            best = i;
        }
    }
    return spectrum.powers[best];
}

double band_energy_lomb_scargle(const TimeSeries& window, const WindowSpec& spec,
                                std::span<const double> extra_candidates) {
    spec.validate();
    const double base = 1.0 / spec.target_period;
    double sum = lomb_scargle_power(window, base);
    for (double f : extra_candidates) {
        if (!(f > 0.0)) continue;
        if (std::abs(f - base) <= 1e-15 * base) continue;  // already counted
        if (std::abs(spec.target_period - 1.0 / f) < spec.period_tolerance) {
            sum += lomb_scargle_power(window, f);
        }
    }
    return sum;
}

}  // namespace perint
