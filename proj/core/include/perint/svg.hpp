#ifndef PERINT_SVG_HPP
#define PERINT_SVG_HPP

#include <optional>
#include <string>

#include "perint/cohort.hpp"
#include "perint/intensity.hpp"

namespace perint {

/// Deterministic renderings: the same inputs always produce the same bytes
/// (no timestamps, no randomness, fixed number formatting).
struct SvgOptions {
    int width = 1200;
    int height = 300;
    int margin = 40;
};

/// One normalized trace as a polyline, with optional red/green/yellow band
/// rectangles behind it.
std::string render_line_chart(const IntensityTrace& trace,
                              const std::optional<AnnotationBands>& bands,
                              const SvgOptions& options = {});

/// Cumulative per-subject areas in distinct colors with the top line
/// emphasized.
std::string render_stacked_chart(const CohortStack& stacked,
                                 const SvgOptions& options = {});

}  // namespace perint

#endif
