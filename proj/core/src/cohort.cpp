#include "perint/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>

namespace perint {
namespace {

// Centers are matched exactly up to a tiny fraction of the stride, so
// traces computed from files round-trip onto the grid.
bool centers_match(Instant a, Instant b, Duration stride) {
    return std::abs(a - b) <= 1e-6 * stride;
}

}  // namespace

double pearson_correlation(const std::vector<double>& a,
                           const std::vector<double>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    if (n == 0) return 0.0;
    const double ma = std::accumulate(a.begin(), a.begin() + n, 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.begin() + n, 0.0) / n;
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xa = a[i] - ma;
        const double xb = b[i] - mb;
        num += xa * xb;
        da += xa * xa;
        db += xb * xb;
    }
    if (da <= 0.0 || db <= 0.0) return da == db ? 1.0 : 0.0;
    return num / std::sqrt(da * db);
}

CohortStack align_traces(const std::vector<IntensityTrace>& traces,
                         Instant start, Instant end) {
    if (traces.empty()) {
        throw Error(ErrorKind::EmptyInput, "no traces to align");
    }
    const Duration stride = traces.front().spec.stride;
    const Duration window = traces.front().spec.window_length;
    for (const auto& t : traces) {
        if (std::abs(t.spec.stride - stride) > 1e-9 * stride) {
            throw Error(ErrorKind::StrideMismatch,
                        "all traces must share the same stride");
        }
    }

    // Centers live in [start + window/2, end - window/2]; this is what
    // leaves the half-window gap at both edges of a stacked chart.
    const Instant grid_start = start + window / 2.0;
    const Instant grid_end = end - window / 2.0;
    if (!(grid_end >= grid_start)) {
        throw Error(ErrorKind::EmptyIntersection,
                    "date range is shorter than one window");
    }
    const auto points = static_cast<std::size_t>(
        std::floor((grid_end - grid_start) / stride + 1e-9)) + 1;

    CohortStack out;
    out.grid.reserve(points);
    for (std::size_t j = 0; j < points; ++j) {
        out.grid.push_back(grid_start + static_cast<double>(j) * stride);
    }

    for (const auto& trace : traces) {
        out.subjects.push_back(trace.subject_id);
        std::vector<double> row(points, 0.0);
        for (std::size_t i = 0; i < trace.size(); ++i) {
            const double offset = (trace.centers[i] - grid_start) / stride;
            const auto j = static_cast<std::ptrdiff_t>(std::llround(offset));
            if (j < 0 || j >= static_cast<std::ptrdiff_t>(points)) continue;
            if (!centers_match(trace.centers[i], out.grid[static_cast<std::size_t>(j)],
                               stride)) {
                continue;
            }
            row[static_cast<std::size_t>(j)] = trace.intensities[i];
        }
        out.normalized.push_back(std::move(row));
    }
    return out;
}

CohortStack stack(CohortStack aligned) {
    aligned.cumulative.clear();
    std::vector<double> running(aligned.grid.size(), 0.0);
    for (const auto& row : aligned.normalized) {
        for (std::size_t j = 0; j < row.size(); ++j) running[j] += row[j];
        aligned.cumulative.push_back(running);
    }
    aligned.top_line = running;
    return aligned;
}

AnnotationBands annotate_bands(const IntensityTrace& trace, Duration band_width) {
    if (trace.empty()) {
        throw Error(ErrorKind::EmptyTrace, "cannot annotate an empty trace");
    }
    const Duration stride = trace.spec.stride;
    const Duration span = trace.centers.back() - trace.centers.front();
    if (span < band_width) {
        throw Error(ErrorKind::SpanTooShort,
                    "trace span is shorter than the band width");
    }

    // Number of samples per band: all centers within [start, start + width)
    // when the band starts on a sample.
    const auto per_band = std::min(
        trace.size(),
        static_cast<std::size_t>(std::ceil(band_width / stride - 1e-9)));
    const std::size_t positions = trace.size() - per_band + 1;

    // Prefix sums so every candidate band is O(1).
    std::vector<double> prefix(trace.size() + 1, 0.0);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        prefix[i + 1] = prefix[i] + trace.intensities[i];
    }
    const auto band_sum = [&](std::size_t i, std::size_t len) {
        return prefix[i + len] - prefix[i];
    };

    std::size_t lo_idx = 0, hi_idx = 0, steep_idx = 0;
    double lo_val = std::numeric_limits<double>::infinity();
    double hi_val = -std::numeric_limits<double>::infinity();
    double steep_val = -std::numeric_limits<double>::infinity();
    const std::size_t half = per_band / 2;
    for (std::size_t i = 0; i < positions; ++i) {
        const double mean = band_sum(i, per_band) / per_band;
        if (mean < lo_val) {
            lo_val = mean;
            lo_idx = i;
        }
        if (mean > hi_val) {
            hi_val = mean;
            hi_idx = i;
        }
        if (half > 0) {
            const double first = band_sum(i, half) / half;
            const double second =
                band_sum(i + per_band - half, half) / half;
            const double change = std::abs(second - first);
            if (change > steep_val) {
                steep_val = change;
                steep_idx = i;
            }
        }
    }

    const auto band_at = [&](std::size_t i) {
        return Band{trace.centers[i], trace.centers[i] + band_width};
    };
    AnnotationBands bands;
    bands.band_width = band_width;
    bands.lowest = band_at(lo_idx);
    bands.highest = band_at(hi_idx);
    bands.steepest = band_at(steep_idx);
    return bands;
}

SubgroupReport subgroup_stability(const std::vector<IntensityTrace>& traces,
                                  std::size_t k, std::uint64_t seed,
                                  Instant start, Instant end) {
    if (k < 2 || traces.size() < 2 * k) {
        throw Error(ErrorKind::TooFewSubjects,
                    "need k >= 2 groups and at least 2k traces");
    }
    CohortStack full = stack(align_traces(traces, start, end));

    std::vector<std::size_t> order(traces.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    SubgroupReport report;
    report.groups.resize(k);
    for (std::size_t i = 0; i < order.size(); ++i) {
        report.groups[i % k].push_back(order[i]);
    }
    for (auto& group : report.groups) std::sort(group.begin(), group.end());

    for (const auto& group : report.groups) {
        std::vector<double> top(full.grid.size(), 0.0);
        for (std::size_t idx : group) {
            for (std::size_t j = 0; j < top.size(); ++j) {
                top[j] += full.normalized[idx][j];
            }
        }
        report.correlations.push_back(pearson_correlation(top, full.top_line));
        report.group_top_lines.push_back(std::move(top));
    }
    return report;
}

}  // namespace perint
