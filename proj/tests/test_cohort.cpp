#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "perint/cohort.hpp"
#include "support.hpp"

using namespace perint;
using namespace perint::testsupport;

namespace {

IntensityTrace make_trace(const std::vector<double>& values, Duration stride,
                          Duration window, Instant first_center,
                          const std::string& subject) {
    IntensityTrace t;
    t.spec.stride = stride;
    t.spec.window_length = window;
    t.spec.target_period = window / 7.0;
    t.subject_id = subject;
    for (std::size_t i = 0; i < values.size(); ++i) {
        t.centers.push_back(first_center + static_cast<double>(i) * stride);
        t.intensities.push_back(values[i]);
        t.coverage.push_back(1.0);
    }
    return t;
}

// Tri-modal cohort shape plus subject noise, normalized to [0, 1].
IntensityTrace trimodal_subject(std::size_t grid_points, Duration stride,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.08);
    std::vector<double> v(grid_points);
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = static_cast<double>(i) / (grid_points - 1);
        const double shape = std::exp(-std::pow((x - 0.15) / 0.07, 2)) +
                             0.8 * std::exp(-std::pow((x - 0.5) / 0.07, 2)) +
                             1.2 * std::exp(-std::pow((x - 0.85) / 0.07, 2));
        v[i] = shape + noise(rng);
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
    }
    for (double& x : v) x = (x - lo) / (hi - lo);
    return make_trace(v, stride, days(7), days(3.5),
                      "subject-" + std::to_string(seed));
}

}  // namespace

TEST_CASE("align_traces identity on a trace's own span") {
    const auto trace = make_trace({0.1, 0.2, 0.3, 0.4}, hours(3), days(7), days(3.5),
                                  "a");
    const Instant start = trace.centers.front() - days(3.5);
    const Instant end = trace.centers.back() + days(3.5);
    const CohortStack aligned = align_traces({trace}, start, end);
    REQUIRE(aligned.grid.size() == 4);
    CHECK(aligned.normalized[0] == trace.intensities);
}

TEST_CASE("align_traces places two identical traces as identical rows") {
    const auto trace = make_trace({0.5, 0.6, 0.7}, hours(1), days(7), days(3.5), "a");
    const CohortStack aligned =
        align_traces({trace, trace}, 0.0, trace.centers.back() + days(3.5));
    CHECK(aligned.normalized[0] == aligned.normalized[1]);
}

TEST_CASE("7-day windows leave a 3.5-day gap at both edges of the grid") {
    const auto trace = make_trace(std::vector<double>(680, 0.5), hours(3), days(7),
                                  days(3.5), "a");
    const CohortStack aligned = align_traces({trace}, 0.0, days(92));
    CHECK(aligned.grid.front() == doctest::Approx(days(3.5)));
    CHECK(aligned.grid.back() == doctest::Approx(days(88.5)));
}

TEST_CASE("align_traces rejects mixed strides and empty ranges") {
    const auto a = make_trace({0.1, 0.2}, hours(1), days(7), days(3.5), "a");
    const auto b = make_trace({0.1, 0.2}, hours(3), days(7), days(3.5), "b");
    CHECK_THROWS_WITH_AS(align_traces({a, b}, 0.0, days(10)),
                         doctest::Contains("StrideMismatch"), Error);
    CHECK_THROWS_WITH_AS(align_traces({a}, 0.0, days(3)),
                         doctest::Contains("EmptyIntersection"), Error);
}

TEST_CASE("stack cumulative rows and top line") {
    const auto a = make_trace({0.2, 0.2, 0.2}, hours(1), days(7), days(3.5), "a");
    const auto b = make_trace({0.3, 0.3, 0.3}, hours(1), days(7), days(3.5), "b");
    const Instant end = a.centers.back() + days(3.5);

    SUBCASE("single subject: top line is the trace") {
        const CohortStack s = stack(align_traces({a}, 0.0, end));
        CHECK(s.top_line == a.intensities);
    }
    SUBCASE("two constant subjects sum to a constant") {
        const CohortStack s = stack(align_traces({a, b}, 0.0, end));
        for (double v : s.top_line) CHECK(v == doctest::Approx(0.5));
        // Cumulative rows are monotone in subject index.
        for (std::size_t j = 0; j < s.grid.size(); ++j) {
            CHECK(s.cumulative[0][j] <= s.cumulative[1][j]);
        }
    }
    SUBCASE("permuting subjects leaves the top line unchanged") {
        const CohortStack s1 = stack(align_traces({a, b}, 0.0, end));
        const CohortStack s2 = stack(align_traces({b, a}, 0.0, end));
        CHECK(s1.top_line == s2.top_line);
    }
}

TEST_CASE("top-line additivity over any partition") {
    std::vector<IntensityTrace> traces;
    for (std::uint64_t s = 0; s < 12; ++s) {
        traces.push_back(trimodal_subject(200, hours(3), s));
    }
    const Instant end = traces[0].centers.back() + days(3.5);
    const CohortStack full = stack(align_traces(traces, 0.0, end));
    const CohortStack left = stack(align_traces(
        {traces.begin(), traces.begin() + 5}, 0.0, end));
    const CohortStack right = stack(align_traces(
        {traces.begin() + 5, traces.end()}, 0.0, end));
    for (std::size_t j = 0; j < full.grid.size(); ++j) {
        CHECK(std::abs(full.top_line[j] -
                       (left.top_line[j] + right.top_line[j])) < 1e-9);
    }
}

TEST_CASE("annotate_bands on a step trace") {
    // Band width of two samples; the steepest band straddles the jump.
    const auto trace =
        make_trace({0.0, 0.0, 0.0, 1.0, 1.0, 1.0}, hours(1), days(0.25), 0.0, "a");
    const AnnotationBands bands = annotate_bands(trace, hours(2));
    CHECK(bands.lowest.start == trace.centers[0]);
    CHECK(bands.steepest.start == trace.centers[2]);
    // Earliest position attaining the maximal band mean.
    CHECK(bands.highest.start == trace.centers[3]);
}

TEST_CASE("annotate_bands tie-breaks to the earliest start") {
    SUBCASE("ramp has constant slope everywhere") {
        std::vector<double> ramp(48);
        // Integer steps keep every band mean exact, so all positions tie.
        for (std::size_t i = 0; i < ramp.size(); ++i) {
            ramp[i] = static_cast<double>(i);
        }
        const auto trace = make_trace(ramp, hours(1), days(0.5), 0.0, "a");
        const AnnotationBands bands = annotate_bands(trace, hours(6));
        CHECK(bands.steepest.start == trace.centers[0]);
    }
    SUBCASE("constant trace: every band ties, all pick the earliest") {
        const auto trace =
            make_trace(std::vector<double>(48, 0.5), hours(1), days(0.5), 0.0, "a");
        const AnnotationBands bands = annotate_bands(trace, hours(6));
        CHECK(bands.lowest.start == trace.centers[0]);
        CHECK(bands.highest.start == trace.centers[0]);
        CHECK(bands.steepest.start == trace.centers[0]);
    }
}

TEST_CASE("annotate_bands matches exhaustive search on random traces") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<double> v(60);
        for (double& x : v) x = dist(rng);
        const auto trace = make_trace(v, hours(1), days(0.5), 0.0, "a");
        const std::size_t per_band = 8;
        const AnnotationBands bands = annotate_bands(trace, hours(per_band));

        double best_lo = 1e300, best_hi = -1e300;
        std::size_t lo_idx = 0, hi_idx = 0;
        for (std::size_t i = 0; i + per_band <= v.size(); ++i) {
            double m = 0.0;
            for (std::size_t j = 0; j < per_band; ++j) m += v[i + j];
            m /= per_band;
            if (m < best_lo) { best_lo = m; lo_idx = i; }
            if (m > best_hi) { best_hi = m; hi_idx = i; }
        }
        CHECK(bands.lowest.start == trace.centers[lo_idx]);
        CHECK(bands.highest.start == trace.centers[hi_idx]);
    }
}

TEST_CASE("annotate_bands invariance under increasing affine transforms") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(72);
    for (double& x : v) x = dist(rng);
    const auto trace = make_trace(v, hours(1), days(0.5), 0.0, "a");

    std::vector<double> scaled = v;
    for (double& x : scaled) x = 4.0 * x + 10.0;
    const auto trace2 = make_trace(scaled, hours(1), days(0.5), 0.0, "a");

    const AnnotationBands b1 = annotate_bands(trace, hours(8));
    const AnnotationBands b2 = annotate_bands(trace2, hours(8));
    CHECK(b1.lowest.start == b2.lowest.start);
    CHECK(b1.highest.start == b2.highest.start);
    CHECK(b1.steepest.start == b2.steepest.start);  // positive scaling only
}

TEST_CASE("annotate_bands rejects spans shorter than the band") {
    const auto trace = make_trace({0.1, 0.2}, hours(1), days(0.25), 0.0, "a");
    CHECK_THROWS_WITH_AS(annotate_bands(trace, days(1)),
                         doctest::Contains("SpanTooShort"), Error);
}

TEST_CASE("subgroup_stability") {
    SUBCASE("identical subjects correlate perfectly") {
        std::vector<IntensityTrace> traces;
        const auto base = trimodal_subject(150, hours(3), 1);
        for (int i = 0; i < 8; ++i) traces.push_back(base);
        const Instant end = base.centers.back() + days(3.5);
        const SubgroupReport report = subgroup_stability(traces, 2, 7, 0.0, end);
        for (double c : report.correlations) CHECK(c == doctest::Approx(1.0));
    }
    SUBCASE("deterministic for a fixed seed") {
        std::vector<IntensityTrace> traces;
        for (std::uint64_t s = 0; s < 10; ++s) {
            traces.push_back(trimodal_subject(150, hours(3), s));
        }
        const Instant end = traces[0].centers.back() + days(3.5);
        const SubgroupReport r1 = subgroup_stability(traces, 2, 99, 0.0, end);
        const SubgroupReport r2 = subgroup_stability(traces, 2, 99, 0.0, end);
        CHECK(r1.groups == r2.groups);
        CHECK(r1.correlations == r2.correlations);
    }
    SUBCASE("shared shape plus noise keeps group correlations high") {
        std::vector<IntensityTrace> traces;
        for (std::uint64_t s = 0; s < 40; ++s) {
            traces.push_back(trimodal_subject(200, hours(3), 400 + s));
        }
        const Instant end = traces[0].centers.back() + days(3.5);
        const SubgroupReport report = subgroup_stability(traces, 4, 11, 0.0, end);
        for (double c : report.correlations) CHECK(c > 0.9);
    }
    SUBCASE("too few subjects rejected") {
        std::vector<IntensityTrace> traces(3, trimodal_subject(50, hours(3), 1));
        CHECK_THROWS_WITH_AS(
            subgroup_stability(traces, 2, 1, 0.0, days(10)),
            doctest::Contains("TooFewSubjects"), Error);
    }
}
