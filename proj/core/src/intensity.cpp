#include "perint/intensity.hpp"

#include <algorithm>
#include <cmath>

#include "perint/spectrum.hpp"

namespace perint {
namespace {

double whole_series_median_gap(const TimeSeries& series) {
    if (series.size() < 2) return 0.0;
    std::vector<double> gaps;
    gaps.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        gaps.push_back(series.timestamps[i] - series.timestamps[i - 1]);
    }
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    return gaps[gaps.size() / 2];
}

TimeSeries slice(const TimeSeries& series, Instant start, Instant end) {
    const auto lo = std::lower_bound(series.timestamps.begin(),
                                     series.timestamps.end(), start);
    const auto hi = std::lower_bound(lo, series.timestamps.end(), end);
    TimeSeries out;
    out.unit_label = series.unit_label;
    const auto i0 = static_cast<std::size_t>(lo - series.timestamps.begin());
    const auto i1 = static_cast<std::size_t>(hi - series.timestamps.begin());
    out.timestamps.assign(series.timestamps.begin() + i0,
                          series.timestamps.begin() + i1);
    out.values.assign(series.values.begin() + i0, series.values.begin() + i1);
    return out;
}

double window_band_energy(const TimeSeries& window, const WindowSpec& spec) {
    switch (spec.method) {
        case Method::Fft:
            return band_energy(fft_periodogram(window), spec);
        case Method::LombScargle:
            return band_energy_lomb_scargle(window, spec);
        case Method::Auto:
            if (is_evenly_sampled(window)) {
                return band_energy(fft_periodogram(window), spec);
            }
            return band_energy_lomb_scargle(window, spec);
    }
    return 0.0;
}

}  // namespace

IntensityTrace compute_intensity_trace(const TimeSeries& series,
                                       const WindowSpec& spec,
                                       const std::string& subject_id) {
    const WindowPlan plan = plan_windows(series, spec);
    const double median_gap = whole_series_median_gap(series);
    const double expected =
        median_gap > 0.0 ? spec.window_length / median_gap : 0.0;

    IntensityTrace trace;
    trace.spec = spec;
    trace.subject_id = subject_id;
    trace.centers = plan.window_centers;
    trace.intensities.reserve(plan.count());
    trace.coverage.reserve(plan.count());

    for (std::size_t t = 0; t < plan.count(); ++t) {
        const Instant start = plan.window_starts[t];
        const TimeSeries window = slice(series, start, start + spec.window_length);
        const double coverage =
            expected > 0.0
                ? std::min(1.0, static_cast<double>(window.size()) / expected)
                : 0.0;
        trace.coverage.push_back(coverage);
        if (coverage < spec.min_coverage || window.size() < 8) {
            trace.intensities.push_back(0.0);
        } else {
            trace.intensities.push_back(window_band_energy(window, spec));
        }
    }
    return trace;
}

IntensityTrace normalize_trace(const IntensityTrace& trace) {
    if (trace.empty()) {
        throw Error(ErrorKind::EmptyTrace, "cannot normalize an empty trace");
    }
    const auto [lo, hi] =
        std::minmax_element(trace.intensities.begin(), trace.intensities.end());
    IntensityTrace out = trace;
    if (*hi == *lo) {
        std::fill(out.intensities.begin(), out.intensities.end(), 0.0);
        return out;
    }
    const double range = *hi - *lo;
    for (double& v : out.intensities) v = (v - *lo) / range;
    return out;
}

}  // namespace perint
