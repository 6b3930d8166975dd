#include "perint/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace perint {
namespace {

// Fixed 3-decimal coordinates keep the output byte-stable across runs.
std::string coord(double v) {
    double r = std::round(v * 1000.0) / 1000.0;
    if (r == 0.0) r = 0.0;  // avoid "-0"
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", r);
    return buf;
}

constexpr const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#2ca02c",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

struct Frame {
    double x0, y0, w, h;  // plot area in pixels
    double tmin, tmax;    // time extent
    double vmax;          // value extent (min is 0)

    double x(double t) const { return x0 + (t - tmin) / (tmax - tmin) * w; }
    double y(double v) const { return y0 + h - v / vmax * h; }
};

void open_svg(std::ostringstream& out, const SvgOptions& o) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width
        << "\" height=\"" << o.height << "\" viewBox=\"0 0 " << o.width << ' '
        << o.height << "\">\n";
    out << "<rect width=\"" << o.width << "\" height=\"" << o.height
        << "\" fill=\"#ffffff\"/>\n";
}

void draw_axes(std::ostringstream& out, const Frame& f) {
    out << "<rect x=\"" << coord(f.x0) << "\" y=\"" << coord(f.y0)
        << "\" width=\"" << coord(f.w) << "\" height=\"" << coord(f.h)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

void draw_band(std::ostringstream& out, const Frame& f, const Band& band,
               const char* color) {
    const double a = std::clamp(band.start, f.tmin, f.tmax);
    const double b = std::clamp(band.end, f.tmin, f.tmax);
    if (!(b > a)) return;
    out << "<rect x=\"" << coord(f.x(a)) << "\" y=\"" << coord(f.y0)
        << "\" width=\"" << coord(f.x(b) - f.x(a)) << "\" height=\""
        << coord(f.h) << "\" fill=\"" << color << "\" fill-opacity=\"0.25\"/>\n";
}

}  // namespace

std::string render_line_chart(const IntensityTrace& trace,
                              const std::optional<AnnotationBands>& bands,
                              const SvgOptions& options) {
    if (trace.empty()) {
        throw Error(ErrorKind::EmptyTrace, "cannot render an empty trace");
    }
    std::ostringstream out;
    open_svg(out, options);

    Frame f;
    f.x0 = options.margin;
    f.y0 = options.margin;
    f.w = options.width - 2.0 * options.margin;
    f.h = options.height - 2.0 * options.margin;
    f.tmin = trace.centers.front();
    f.tmax = trace.centers.back();
    if (f.tmax <= f.tmin) f.tmax = f.tmin + 1.0;
    f.vmax = *std::max_element(trace.intensities.begin(), trace.intensities.end());
    if (f.vmax <= 0.0) f.vmax = 1.0;

    if (bands.has_value()) {
        draw_band(out, f, bands->lowest, "#d62728");    // red
        draw_band(out, f, bands->highest, "#2ca02c");   // green
        draw_band(out, f, bands->steepest, "#e6c000");  // yellow
    }
    draw_axes(out, f);

    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i > 0) out << ' ';
        out << coord(f.x(trace.centers[i])) << ','
            << coord(f.y(trace.intensities[i]));
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

std::string render_stacked_chart(const CohortStack& stacked,
                                 const SvgOptions& options) {
    if (stacked.grid.empty() || stacked.cumulative.empty()) {
        throw Error(ErrorKind::EmptyTrace, "cannot render an empty stack");
    }
    std::ostringstream out;
    open_svg(out, options);

    Frame f;
    f.x0 = options.margin;
    f.y0 = options.margin;
    f.w = options.width - 2.0 * options.margin;
    f.h = options.height - 2.0 * options.margin;
    f.tmin = stacked.grid.front();
    f.tmax = stacked.grid.back();
    if (f.tmax <= f.tmin) f.tmax = f.tmin + 1.0;
    f.vmax = *std::max_element(stacked.top_line.begin(), stacked.top_line.end());
    if (f.vmax <= 0.0) f.vmax = 1.0;

    // One filled area per subject between consecutive cumulative rows.
    const std::size_t n = stacked.grid.size();
    std::vector<double> lower(n, 0.0);
    for (std::size_t s = 0; s < stacked.cumulative.size(); ++s) {
        const auto& upper = stacked.cumulative[s];
        out << "<path fill=\"" << kPalette[s % kPaletteSize]
            << "\" fill-opacity=\"0.8\" stroke=\"none\" d=\"M";
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0) out << " L";
            out << coord(f.x(stacked.grid[j])) << ' ' << coord(f.y(upper[j]));
        }
        for (std::size_t j = n; j-- > 0;) {
            out << " L" << coord(f.x(stacked.grid[j])) << ' '
                << coord(f.y(lower[j]));
        }
        out << " Z\"/>\n";
        lower = upper;
    }

    draw_axes(out, f);
    out << "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) out << ' ';
        out << coord(f.x(stacked.grid[j])) << ',' << coord(f.y(stacked.top_line[j]));
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

}  // namespace perint
