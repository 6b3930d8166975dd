#include "perint/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <limits>
#include <numeric>
#include <utility>

namespace perint {
namespace {

using Complex = std::complex<double>;

// Left-half-plane poles of the analog Butterworth low-pass prototype
// (cutoff 1 rad/s).
std::vector<Complex> butterworth_prototype(int order) {
    std::vector<Complex> poles;
    poles.reserve(order);
    for (int k = 0; k < order; ++k) {
        const double theta = M_PI * (2.0 * k + order + 1.0) / (2.0 * order);
        poles.emplace_back(std::cos(theta), std::sin(theta));
    }
    return poles;
}

}  // namespace

TimeSeries bin_events(const EventLog& log, Duration bin_width, Instant start,
                      Instant end) {
    if (!(end > start)) {
        throw Error(ErrorKind::InvalidRange, "require end > start");
    }
    if (!(bin_width > 0.0)) {
        throw Error(ErrorKind::InvalidRange, "bin_width must be positive");
    }
    const auto bins = static_cast<std::size_t>(
        std::ceil((end - start) / bin_width - 1e-9));
    TimeSeries out;
    out.unit_label = "events/bin";
    out.timestamps.resize(bins);
    out.values.assign(bins, 0.0);
    for (std::size_t i = 0; i < bins; ++i) {
        out.timestamps[i] = start + static_cast<double>(i) * bin_width;
    }
    for (const Event& e : log.events) {
        if (e.timestamp < start || e.timestamp >= end) continue;
        auto idx = static_cast<std::size_t>((e.timestamp - start) / bin_width);
        if (idx >= bins) idx = bins - 1;
        out.values[idx] += e.weight;
    }
    return out;
}

TimeSeries fuse_streams(const std::vector<TimeSeries>& series) {
    if (series.empty()) {
        throw Error(ErrorKind::EmptyInput, "nothing to fuse");
    }
    TimeSeries out = series.front();
    for (std::size_t s = 1; s < series.size(); ++s) {
        if (series[s].timestamps != out.timestamps) {
            throw Error(ErrorKind::GridMismatch,
                        "fused series must share an identical timestamp grid");
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.values[i] += series[s].values[i];
        }
    }
    return out;
}

TimeSeries signal_vector_magnitude(const TriaxialSeries& raw) {
    TimeSeries out;
    out.unit_label = "g";
    out.timestamps = raw.timestamps;
    out.values.reserve(raw.size());
    for (const auto& v : raw.xyz) {
        out.values.push_back(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
    }
    return out;
}

double FilterDesign::magnitude_at(double frequency_hz) const {
    const Complex z = std::polar(1.0, 2.0 * M_PI * frequency_hz / sample_rate);
    const Complex zi = 1.0 / z;
    Complex h = 1.0;
    for (const Biquad& s : sections) {
        h *= (s.b0 + s.b1 * zi + s.b2 * zi * zi) /
             (1.0 + s.a1 * zi + s.a2 * zi * zi);
    }
    return std::abs(h);
}

FilterDesign design_bandpass(int order, double low_hz, double high_hz,
                             double rate_hz) {
    if (!(rate_hz > 0.0) || !(low_hz > 0.0) || !(high_hz > low_hz)) {
        throw Error(ErrorKind::InvalidCutoffs,
                    "require 0 < low < high and rate > 0");
    }

    FilterDesign design;
    design.order = order;
    design.low_cutoff = low_hz;
    design.high_cutoff = high_hz;
    design.sample_rate = rate_hz;

    const double high_limit = 0.45 * rate_hz;
    if (high_hz > high_limit) {
        design.high_cutoff = high_limit;
        design.high_clamped = true;
        std::ostringstream warning;
        warning << "high cutoff " << high_hz
                << " Hz exceeds 0.45*rate; clamped to " << high_limit << " Hz";
        design.warning = warning.str();
        if (!(low_hz < design.high_cutoff)) {
            throw Error(ErrorKind::InvalidCutoffs,
                        "low cutoff is at or above the clamped high cutoff");
        }
    }

    // Pre-warped analog edge frequencies (rad/s) for the bilinear transform.
    const double fs2 = 2.0 * rate_hz;
    const double w1 = fs2 * std::tan(M_PI * low_hz / rate_hz);
    const double w2 = fs2 * std::tan(M_PI * design.high_cutoff / rate_hz);
    const double w0 = std::sqrt(w1 * w2);
    const double bw = w2 - w1;

    // Low-pass prototype -> analog band-pass (order doubles, N zeros at s=0).
    std::vector<Complex> bp_poles;
    bp_poles.reserve(2 * order);
    for (const Complex& p : butterworth_prototype(order)) {
        const Complex half = p * (bw / 2.0);
        const Complex root = std::sqrt(half * half - w0 * w0);
        bp_poles.push_back(half + root);
        bp_poles.push_back(half - root);
    }
    double gain = std::pow(bw, order);

    // Bilinear transform. The N zeros at s=0 map to z=1 and the N zeros at
    // infinity land at z=-1, so every section keeps the structural
    // band-pass numerator (z^2 - 1).
    std::vector<Complex> z_poles;
    z_poles.reserve(bp_poles.size());
    Complex pole_prod = 1.0;
    for (const Complex& p : bp_poles) {
        z_poles.push_back((fs2 + p) / (fs2 - p));
        pole_prod *= (fs2 - p);
    }
    const double zero_prod = std::pow(fs2, order);  // from the N zeros at s=0
    gain *= zero_prod / pole_prod.real();

    // Group poles into conjugate pairs so each biquad has real coefficients.
    std::vector<bool> used(z_poles.size(), false);
    std::vector<std::pair<Complex, Complex>> pairs;
    for (std::size_t i = 0; i < z_poles.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::size_t partner = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < z_poles.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(std::conj(z_poles[i]) - z_poles[j]);
            if (d < best) {
                best = d;
                partner = j;
            }
        }
        used[partner] = true;
        pairs.emplace_back(z_poles[i], z_poles[partner]);
    }

    const double section_gain = std::pow(std::abs(gain), 1.0 / order);
    const double sign = gain < 0.0 ? -1.0 : 1.0;
    for (int s = 0; s < order; ++s) {
        const auto& [p, q] = pairs[static_cast<std::size_t>(s)];
        Biquad biq;
        const double g = s == 0 ? sign * section_gain : section_gain;
        biq.b0 = g;
        biq.b1 = 0.0;
        biq.b2 = -g;
        biq.a1 = -(p + q).real();
        biq.a2 = (p * q).real();
        if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0) {
            throw Error(ErrorKind::InvalidCutoffs,
                        "designed filter is unstable for these parameters");
        }
        design.sections.push_back(biq);
    }
    return design;
}

TimeSeries apply_filter(const FilterDesign& design, const TimeSeries& series) {
    const double dt = 1.0 / design.sample_rate;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double gap = series.timestamps[i] - series.timestamps[i - 1];
        if (std::abs(gap - dt) > 0.01 * dt) {
            throw Error(ErrorKind::RateMismatch,
                        "series is not evenly sampled at the filter rate");
        }
    }
    TimeSeries out = series;
    // Direct form II transposed per section, zero initial state.
    for (const Biquad& s : design.sections) {
        double s1 = 0.0, s2 = 0.0;
        for (double& v : out.values) {
            const double x = v;
            const double y = s.b0 * x + s1;
            s1 = s.b1 * x - s.a1 * y + s2;
            s2 = s.b2 * x - s.a2 * y;
            v = y;
        }
    }
    return out;
}

TimeSeries rectify_abs(const TimeSeries& series) {
    TimeSeries out = series;
    for (double& v : out.values) v = std::abs(v);
    return out;
}

TimeSeries mean_downsample(const TimeSeries& series, Duration bucket) {
    if (!(bucket > 0.0)) {
        throw Error(ErrorKind::InvalidRange, "bucket must be positive");
    }
    TimeSeries out;
    out.unit_label = series.unit_label;
    if (series.empty()) return out;
    const Instant origin = series.timestamps.front();
    std::size_t i = 0;
    while (i < series.size()) {
        const auto k = static_cast<std::size_t>(
            (series.timestamps[i] - origin) / bucket);
        const Instant bucket_end = origin + static_cast<double>(k + 1) * bucket;
        double sum = 0.0;
        std::size_t n = 0;
        while (i < series.size() && series.timestamps[i] < bucket_end) {
            sum += series.values[i];
            ++n;
            ++i;
        }
        out.timestamps.push_back(origin + static_cast<double>(k) * bucket);
        out.values.push_back(sum / static_cast<double>(n));
    }
    return out;
}

}  // namespace perint
