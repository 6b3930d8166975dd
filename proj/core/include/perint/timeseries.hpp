#ifndef PERINT_TIMESERIES_HPP
#define PERINT_TIMESERIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "perint/errors.hpp"

namespace perint {

// All instants are UTC seconds since the Unix epoch; all durations are seconds.
using Instant = double;
using Duration = double;

constexpr Duration seconds(double s) { return s; }
constexpr Duration minutes(double m) { return m * 60.0; }
constexpr Duration hours(double h) { return h * 3600.0; }
constexpr Duration days(double d) { return d * 86400.0; }

/// Timestamped scalar samples, possibly irregular. Immutable after
/// validation; strictly increasing timestamps, finite values.
struct TimeSeries {
    std::vector<Instant> timestamps;
    std::vector<double> values;
    std::string unit_label;

    std::size_t size() const { return timestamps.size(); }
    bool empty() const { return timestamps.empty(); }
    Duration span() const {
        return empty() ? 0.0 : timestamps.back() - timestamps.front();
    }
};

enum class Method { Auto, Fft, LombScargle };

/// Parameters of the sliding-window analysis: target frequency (as a
/// period), window length m, stride l, and the period tolerance used to
/// collect neighbouring frequency bins.
struct WindowSpec {
    Duration target_period = hours(24);
    Duration window_length = days(7);
    Duration stride = hours(1);
    Duration period_tolerance = hours(0.01);
    Method method = Method::Auto;
    double min_coverage = 0.1;

    /// Throws InvalidSpec when any invariant is violated.
    void validate() const;
};

struct WindowPlan {
    std::vector<Instant> window_starts;
    std::vector<Instant> window_centers;

    std::size_t count() const { return window_starts.size(); }
};

struct ValidationReport {
    std::size_t dropped_nonfinite = 0;
    std::size_t collapsed_duplicates = 0;
};

/// Sorts, drops non-finite values and mean-collapses duplicate timestamps.
/// Throws EmptySeries when nothing valid remains.
TimeSeries validate_series(const TimeSeries& raw, ValidationReport* report = nullptr);

/// Lays out half-open windows [start, start + window_length) at stride
/// spacing over the series span. Depends only on the first and last
/// timestamps. Throws SpanTooShort when the span is shorter than one window.
WindowPlan plan_windows(const TimeSeries& series, const WindowSpec& spec);

}  // namespace perint

#endif
