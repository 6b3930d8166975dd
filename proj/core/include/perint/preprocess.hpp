#ifndef PERINT_PREPROCESS_HPP
#define PERINT_PREPROCESS_HPP

#include <array>
#include <string>
#include <vector>

#include "perint/timeseries.hpp"

namespace perint {

struct Event {
    Instant timestamp = 0.0;
    std::string stream_id;
    double weight = 1.0;
};

struct EventLog {
    std::vector<Event> events;
    std::string subject_id;
};

/// Raw tri-axial accelerometer stream in g units.
struct TriaxialSeries {
    std::vector<Instant> timestamps;
    std::vector<std::array<double, 3>> xyz;
    double nominal_rate = 0.0;  // Hz

    std::size_t size() const { return timestamps.size(); }
};

/// One biquad of the cascaded realization: b0 + b1 z^-1 + b2 z^-2 over
/// 1 + a1 z^-1 + a2 z^-2.
struct Biquad {
    double b0, b1, b2;
    double a1, a2;
};

struct FilterDesign {
    int order = 4;               // analog prototype order (band-pass doubles it)
    double low_cutoff = 0.0;     // Hz, as requested
    double high_cutoff = 0.0;    // Hz, possibly clamped
    double sample_rate = 0.0;    // Hz
    std::vector<Biquad> sections;
    bool high_clamped = false;
    std::string warning;

    /// |H(e^{j 2 pi f / fs})| evaluated from the section cascade.
    double magnitude_at(double frequency_hz) const;
};

/// Sums event weights into evenly spaced bins over [start, end); empty bins
/// are real zero samples. Throws InvalidRange.
TimeSeries bin_events(const EventLog& log, Duration bin_width, Instant start,
                      Instant end);

/// Pointwise sum of series sharing an identical timestamp grid.
/// Throws GridMismatch.
TimeSeries fuse_streams(const std::vector<TimeSeries>& series);

/// Euclidean norm per sample; orientation-invariant.
TimeSeries signal_vector_magnitude(const TriaxialSeries& raw);

/// Digital Butterworth band-pass as cascaded second-order sections via the
/// bilinear transform with frequency pre-warping. A high cutoff above
/// 0.45 * rate is clamped with a warning attached to the design.
FilterDesign design_bandpass(int order, double low_hz, double high_hz,
                             double rate_hz);

/// Forward single-pass cascade application with zero initial state.
/// Throws RateMismatch when the series is not evenly sampled at the design
/// rate within 1%.
TimeSeries apply_filter(const FilterDesign& design, const TimeSeries& series);

/// Absolute value per sample.
TimeSeries rectify_abs(const TimeSeries& series);

/// Arithmetic mean over non-overlapping buckets aligned to the first
/// timestamp; empty buckets emit no sample, leaving a coverage gap.
TimeSeries mean_downsample(const TimeSeries& series, Duration bucket);

}  // namespace perint

#endif
