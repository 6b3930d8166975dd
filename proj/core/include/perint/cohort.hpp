#ifndef PERINT_COHORT_HPP
#define PERINT_COHORT_HPP

#include <string>
#include <vector>

#include "perint/intensity.hpp"

namespace perint {

/// Time-aligned normalized traces plus their cumulative stack.
struct CohortStack {
    std::vector<std::string> subjects;
    std::vector<Instant> grid;  // shared window centers
    std::vector<std::vector<double>> normalized;  // [subject][grid point]
    std::vector<std::vector<double>> cumulative;  // prefix sums across subjects
    std::vector<double> top_line;                 // total per grid point
};

struct Band {
    Instant start = 0.0;
    Instant end = 0.0;
};

/// Lowest (red), highest (green) and steepest-change (yellow) regions of a
/// normalized trace.
struct AnnotationBands {
    Band lowest;
    Band highest;
    Band steepest;
    Duration band_width = 0.0;
};

struct SubgroupReport {
    std::vector<std::vector<std::size_t>> groups;  // subject indices per group
    std::vector<std::vector<double>> group_top_lines;
    std::vector<double> correlations;  // group top line vs full top line
};

/// Places each trace onto a common center grid spanning
/// [start + window/2, end - window/2] at stride spacing; grid points a
/// subject has no value for are 0. Throws StrideMismatch or
/// EmptyIntersection.
CohortStack align_traces(const std::vector<IntensityTrace>& traces,
                         Instant start, Instant end);

/// Fills cumulative rows and the top line of an aligned stack.
CohortStack stack(CohortStack aligned);

/// Band positions are evaluated at every trace sample where a full band
/// fits; ties resolve to the earliest start.
AnnotationBands annotate_bands(const IntensityTrace& trace, Duration band_width);

/// Seeded random partition into k near-equal groups; reports the Pearson
/// correlation of each group's top line against the full-cohort top line.
SubgroupReport subgroup_stability(const std::vector<IntensityTrace>& traces,
                                  std::size_t k, std::uint64_t seed,
                                  Instant start, Instant end);

double pearson_correlation(const std::vector<double>& a,
                           const std::vector<double>& b);

}  // namespace perint

#endif
