#ifndef PERINT_SPECTRUM_HPP
#define PERINT_SPECTRUM_HPP

#include <span>
#include <vector>

#include "perint/timeseries.hpp"

namespace perint {

/// One-sided power spectrum. Frequencies are in cycles per second to match
/// the Instant/Duration unit; powers are |DFT|^2 / n of mean-detrended
/// values.
struct Spectrum {
    std::vector<double> frequencies;
    std::vector<double> powers;
    double total_power = 0.0;
};

/// Subtracts the arithmetic mean. Throws EmptyInput on an empty list.
std::vector<double> detrend_mean(std::span<const double> values);

/// True when the inter-sample gaps deviate from their median by at most 1%.
bool is_evenly_sampled(const TimeSeries& window);

/// Classical periodogram of an evenly sampled window: frequencies k/(n*dt)
/// for k = 1..floor(n/2), powers |X_k|^2 / n of the detrended values.
/// Throws UnevenSampling (caller should fall back to Lomb-Scargle) or
/// TooFewSamples (< 8).
Spectrum fft_periodogram(const TimeSeries& window);

/// Classical Lomb-Scargle power at one frequency (cycles per second),
/// computed on mean-detrended values. Equals half the residual-sum-of-
/// squares reduction of the best least-squares sinusoid fit at that
/// frequency. Throws TooFewSamples or NonPositiveFrequency.
double lomb_scargle_power(const TimeSeries& window, double frequency);

/// FFT route: sum of powers over grid frequencies whose period differs from
/// the target by less than period_tolerance; when no bin qualifies the
/// single nearest-period bin is used so the result is never vacuously zero.
double band_energy(const Spectrum& spectrum, const WindowSpec& spec);

/// Lomb-Scargle route: power at 1/target_period plus at any caller-supplied
/// candidate frequencies whose period lies within tolerance, summed.
double band_energy_lomb_scargle(const TimeSeries& window, const WindowSpec& spec,
                                std::span<const double> extra_candidates = {});

}  // namespace perint

#endif
