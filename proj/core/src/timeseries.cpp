#include "perint/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace perint {

void WindowSpec::validate() const {
    if (!(target_period > 0.0) || !(target_period < window_length)) {
        throw Error(ErrorKind::InvalidSpec,
                    "require 0 < target_period < window_length");
    }
    if (!(stride > 0.0) || stride > window_length) {
        throw Error(ErrorKind::InvalidSpec, "require 0 < stride <= window_length");
    }
    if (!(period_tolerance > 0.0)) {
        throw Error(ErrorKind::InvalidSpec, "period_tolerance must be positive");
    }
    if (min_coverage < 0.0 || min_coverage > 1.0) {
        throw Error(ErrorKind::InvalidSpec, "min_coverage must lie in [0, 1]");
    }
}

TimeSeries validate_series(const TimeSeries& raw, ValidationReport* report) {
    if (raw.timestamps.size() != raw.values.size()) {
        throw Error(ErrorKind::NonMonotonic,
                    "timestamp and value lengths differ");
    }

    ValidationReport local;
    std::vector<std::pair<Instant, double>> samples;
    samples.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw.values[i]) || !std::isfinite(raw.timestamps[i])) {
            ++local.dropped_nonfinite;
            continue;
        }
        samples.emplace_back(raw.timestamps[i], raw.values[i]);
    }
    std::stable_sort(samples.begin(), samples.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    TimeSeries out;
    out.unit_label = raw.unit_label;
    out.timestamps.reserve(samples.size());
    out.values.reserve(samples.size());
    std::size_t i = 0;
    while (i < samples.size()) {
        std::size_t j = i + 1;
        double sum = samples[i].second;
        while (j < samples.size() && samples[j].first == samples[i].first) {
            sum += samples[j].second;
            ++j;
        }
        local.collapsed_duplicates += (j - i) - 1;
        out.timestamps.push_back(samples[i].first);
        out.values.push_back(sum / static_cast<double>(j - i));
        i = j;
    }

    if (report != nullptr) *report = local;
    if (out.empty()) {
        throw Error(ErrorKind::EmptySeries, "no valid samples remain");
    }
    return out;
}

WindowPlan plan_windows(const TimeSeries& series, const WindowSpec& spec) {
    spec.validate();
    if (series.empty()) {
        throw Error(ErrorKind::EmptySeries, "cannot plan windows on an empty series");
    }
    const Duration span = series.span();
    if (span < spec.window_length) {
        throw Error(ErrorKind::SpanTooShort,
                    "series span is shorter than one window");
    }
    // Small slack so that spans which are exact multiples of the stride do
    // not lose the last window to rounding.
    const auto count = static_cast<std::size_t>(
        std::floor((span - spec.window_length) / spec.stride + 1e-9)) + 1;

    WindowPlan plan;
    plan.window_starts.reserve(count);
    plan.window_centers.reserve(count);
    const Instant first = series.timestamps.front();
    for (std::size_t t = 0; t < count; ++t) {
        const Instant start = first + static_cast<double>(t) * spec.stride;
        plan.window_starts.push_back(start);
        plan.window_centers.push_back(start + spec.window_length / 2.0);
    }
    return plan;
}

}  // namespace perint
