// perint: periodicity-intensity analysis of longitudinal time series.
//
// Subcommands: ingest, intensity, stack, annotate, stability, render.
// Data goes to files; diagnostics go to stderr. Exit codes: 0 success,
// 2 flag/usage errors, 3 data errors.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "perint/cohort.hpp"
#include "perint/intensity.hpp"
#include "perint/io.hpp"
#include "perint/preprocess.hpp"
#include "perint/svg.hpp"
#include "perint/timeseries.hpp"

namespace fs = std::filesystem;
using namespace perint;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

// ---- ingest ---------------------------------------------------------------

void run_ingest_events(const std::vector<fs::path>& inputs, Duration bin_width,
                       const fs::path& out_path) {
    std::vector<EventLog> logs;
    Instant min_t = std::numeric_limits<double>::infinity();
    Instant max_t = -std::numeric_limits<double>::infinity();
    std::size_t total_events = 0;
    for (const auto& p : inputs) {
        logs.push_back(read_events(p));
        total_events += logs.back().events.size();
        for (const Event& e : logs.back().events) {
            min_t = std::min(min_t, e.timestamp);
            max_t = std::max(max_t, e.timestamp);
        }
    }
    if (total_events == 0) {
        throw Error(ErrorKind::EmptySeries, "no events in any input file");
    }
    const auto nbins =
        static_cast<std::size_t>(std::floor((max_t - min_t) / bin_width)) + 1;
    const Instant end = min_t + static_cast<double>(nbins) * bin_width;

    std::vector<TimeSeries> binned;
    binned.reserve(logs.size());
    for (const auto& log : logs) {
        binned.push_back(bin_events(log, bin_width, min_t, end));
    }
    const TimeSeries fused = fuse_streams(binned);
    write_series(fused, out_path);
    std::cerr << "ingest: " << total_events << " events from " << inputs.size()
              << " file(s) -> " << fused.size() << " bins\n";
}

void run_ingest_accel(const std::vector<fs::path>& inputs, int order,
                      double low_hz, double high_hz, Duration bucket,
                      const fs::path& out_path) {
    if (inputs.size() != 1) {
        throw UsageError("accel ingest expects exactly one --input file");
    }
    ReadReport report;
    const TriaxialSeries raw = read_accel(inputs.front(), &report);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";

    const FilterDesign design =
        design_bandpass(order, low_hz, high_hz, raw.nominal_rate);
    if (design.high_clamped) std::cerr << "warning: " << design.warning << "\n";

    const TimeSeries svm = signal_vector_magnitude(raw);
    const TimeSeries filtered = apply_filter(design, svm);
    const TimeSeries rectified = rectify_abs(filtered);
    TimeSeries downsampled = mean_downsample(rectified, bucket);
    downsampled.unit_label = "mean SVM (band-passed)";
    write_series(downsampled, out_path);
    std::cerr << "ingest: " << raw.size() << " accel rows at "
              << format_double(raw.nominal_rate) << " Hz -> "
              << downsampled.size() << " samples\n";
}

// ---- stack / stability helpers -------------------------------------------

std::vector<IntensityTrace> load_traces(const std::vector<fs::path>& inputs) {
    std::vector<IntensityTrace> traces;
    traces.reserve(inputs.size());
    for (const auto& p : inputs) traces.push_back(read_trace(p));
    return traces;
}

void default_range(const std::vector<IntensityTrace>& traces, Instant& start,
                   Instant& end) {
    start = std::numeric_limits<double>::infinity();
    end = -std::numeric_limits<double>::infinity();
    for (const auto& t : traces) {
        start = std::min(start, t.centers.front() - t.spec.window_length / 2.0);
        end = std::max(end, t.centers.back() + t.spec.window_length / 2.0);
    }
}

void write_stack_matrix(const CohortStack& stacked, const fs::path& path) {
    std::ostringstream out;
    out << "center_iso8601";
    for (const auto& s : stacked.subjects) out << ',' << s;
    out << '\n';
    for (std::size_t j = 0; j < stacked.grid.size(); ++j) {
        out << format_iso8601(stacked.grid[j]);
        for (const auto& row : stacked.cumulative) out << ',' << format_double(row[j]);
        out << '\n';
    }
    write_text(path, out.str());
}

CohortStack read_stack_matrix(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::ParseError, path.string() + ": empty stack file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CohortStack stacked;
    {
        std::stringstream header(line);
        std::string field;
        if (!std::getline(header, field, ',') || field != "center_iso8601") {
            throw Error(ErrorKind::ParseError,
                        path.string() + ": expected center_iso8601 header");
        }
        while (std::getline(header, field, ',')) stacked.subjects.push_back(field);
    }
    stacked.cumulative.assign(stacked.subjects.size(), {});
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        stacked.grid.push_back(parse_iso8601(field));
        for (auto& column : stacked.cumulative) {
            if (!std::getline(row, field, ',')) {
                throw Error(ErrorKind::ParseError,
                            path.string() + ": short row in stack file");
            }
            double v = 0.0;
            try {
                v = std::stod(field);
            } catch (const std::exception&) {
                throw Error(ErrorKind::ParseError,
                            path.string() + ": bad number '" + field + "'");
            }
            column.push_back(v);
        }
    }
    if (stacked.grid.empty()) {
        throw Error(ErrorKind::EmptyTrace, path.string() + ": stack has no rows");
    }
    if (!stacked.cumulative.empty()) stacked.top_line = stacked.cumulative.back();
    return stacked;
}

AnnotationBands read_bands_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::string line;
    AnnotationBands bands;
    bool any = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "band,start,end") continue;
        std::stringstream row(line);
        std::string label, a, b;
        if (!std::getline(row, label, ',') || !std::getline(row, a, ',') ||
            !std::getline(row, b, ',')) {
            throw Error(ErrorKind::ParseError,
                        path.string() + ": expected band,start,end");
        }
        const Band band{parse_iso8601(a), parse_iso8601(b)};
        if (label == "red") bands.lowest = band;
        else if (label == "green") bands.highest = band;
        else if (label == "yellow") bands.steepest = band;
        else {
            throw Error(ErrorKind::ParseError,
                        path.string() + ": unknown band label '" + label + "'");
        }
        bands.band_width = band.end - band.start;
        any = true;
    }
    if (!any) {
        throw Error(ErrorKind::ParseError, path.string() + ": no bands found");
    }
    return bands;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"periodicity intensity analysis for longitudinal time series"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand(
        "ingest", "turn raw event logs or accelerometer CSV into a series file");
    std::string ingest_kind;
    std::vector<std::string> ingest_inputs;
    std::string ingest_bin = "15m";
    std::string ingest_out;
    int filter_order = 4;
    double filter_low = 0.5;
    double filter_high = 20.0;
    std::string accel_bucket = "60s";
    ingest->add_option("--kind", ingest_kind, "events|accel")
        ->required()
        ->check(CLI::IsMember({"events", "accel"}));
    ingest->add_option("--input", ingest_inputs, "input file(s)")->required();
    ingest->add_option("--bin", ingest_bin, "event bin width (default 15m)");
    ingest->add_option("--filter-order", filter_order,
                       "accel band-pass prototype order (default 4)");
    ingest->add_option("--filter-low", filter_low,
                       "accel band-pass low cutoff in Hz (default 0.5)");
    ingest->add_option("--filter-high", filter_high,
                       "accel band-pass high cutoff in Hz (default 20; "
                       "clamped to 0.45*rate with a warning)");
    ingest->add_option("--bucket", accel_bucket,
                       "accel mean-downsample bucket (default 60s)");
    ingest->add_option("--out", ingest_out, "output series file")->required();

    // intensity
    auto* intensity = app.add_subcommand(
        "intensity", "compute a periodicity intensity trace from a series file");
    std::string period = "24h", window = "7d", stride = "1h", tolerance = "0.01h";
    std::string method = "auto";
    double min_coverage = 0.1;
    bool do_normalize = false;
    std::string intensity_in, intensity_out, config_path;
    intensity->add_option("--period", period, "target period (default 24h)");
    intensity->add_option("--window", window, "window length (default 7d)");
    intensity->add_option("--stride", stride, "window stride (default 1h)");
    intensity->add_option("--tolerance", tolerance,
                          "period tolerance for neighbouring bins (default 0.01h)");
    intensity->add_option("--method", method, "auto|fft|lomb-scargle")
        ->check(CLI::IsMember({"auto", "fft", "lomb-scargle"}));
    intensity->add_option("--min-coverage", min_coverage,
                          "minimum window coverage (default 0.1)");
    intensity->add_flag("--normalize", do_normalize, "min-max normalize to [0,1]");
    intensity->add_option("--config", config_path, "run configuration file");
    intensity->add_option("--in", intensity_in, "input series file")->required();
    intensity->add_option("--out", intensity_out, "output trace file")->required();

    // stack
    auto* stack_cmd = app.add_subcommand(
        "stack", "align and stack normalized traces into a cohort matrix");
    std::vector<std::string> stack_inputs;
    std::string stack_out, stack_top, stack_start, stack_end;
    stack_cmd->add_option("--in", stack_inputs, "trace files")->required();
    stack_cmd->add_option("--start", stack_start, "fixed start (ISO-8601)");
    stack_cmd->add_option("--end", stack_end, "fixed end (ISO-8601)");
    stack_cmd->add_option("--out", stack_out, "output matrix file")->required();
    stack_cmd->add_option("--top", stack_top, "optional top-line series file");

    // annotate
    auto* annotate = app.add_subcommand(
        "annotate", "find lowest/highest/steepest bands of a trace");
    std::string annotate_in, annotate_out, band_width = "7d";
    annotate->add_option("--in", annotate_in, "trace file")->required();
    annotate->add_option("--band-width", band_width, "band width (default 7d)");
    annotate->add_option("--out", annotate_out, "output bands file")->required();

    // stability
    auto* stability = app.add_subcommand(
        "stability", "random sub-group check of a stacked cohort");
    std::vector<std::string> stability_inputs;
    std::size_t groups = 2;
    std::uint64_t rng_seed = 0;
    std::string stability_out, stability_start, stability_end;
    stability->add_option("--in", stability_inputs, "trace files")->required();
    stability->add_option("--groups", groups, "number of sub-groups")->required();
    stability->add_option("--rng-seed", rng_seed, "partition seed")->required();
    stability->add_option("--start", stability_start, "fixed start (ISO-8601)");
    stability->add_option("--end", stability_end, "fixed end (ISO-8601)");
    stability->add_option("--out", stability_out, "output correlations file")
        ->required();

    // render
    auto* render = app.add_subcommand("render", "render a trace or stack as SVG");
    std::string render_kind, render_in, render_bands, render_out;
    render->add_option("--kind", render_kind, "line|stacked")
        ->required()
        ->check(CLI::IsMember({"line", "stacked"}));
    render->add_option("--in", render_in, "trace file (line) or matrix file (stacked)")
        ->required();
    render->add_option("--bands", render_bands, "optional bands file (line kind)");
    render->add_option("--out", render_out, "output SVG file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*ingest) {
        std::vector<fs::path> inputs(ingest_inputs.begin(), ingest_inputs.end());
        if (ingest_kind == "events") {
            run_ingest_events(inputs, parse_duration(ingest_bin), ingest_out);
        } else {
            run_ingest_accel(inputs, filter_order, filter_low, filter_high,
                             parse_duration(accel_bucket), ingest_out);
        }
        return 0;
    }

    if (*intensity) {
        WindowSpec spec;
        if (!config_path.empty()) {
            spec = load_run_config(config_path).spec;
        }
        if (intensity->count("--period") || config_path.empty())
            spec.target_period = parse_duration(period);
        if (intensity->count("--window") || config_path.empty())
            spec.window_length = parse_duration(window);
        if (intensity->count("--stride") || config_path.empty())
            spec.stride = parse_duration(stride);
        if (intensity->count("--tolerance") || config_path.empty())
            spec.period_tolerance = parse_duration(tolerance);
        if (intensity->count("--method") || config_path.empty()) {
            spec.method = method == "fft"            ? Method::Fft
                          : method == "lomb-scargle" ? Method::LombScargle
                                                     : Method::Auto;
        }
        if (intensity->count("--min-coverage") || config_path.empty())
            spec.min_coverage = min_coverage;
        try {
            spec.validate();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }

        const TimeSeries series = validate_series(read_series(intensity_in));
        IntensityTrace trace = compute_intensity_trace(
            series, spec, fs::path(intensity_in).stem().string());
        if (do_normalize) trace = normalize_trace(trace);
        write_trace(trace, intensity_out);
        std::cerr << "intensity: " << trace.size() << " windows\n";
        return 0;
    }

    if (*stack_cmd) {
        auto traces = load_traces({stack_inputs.begin(), stack_inputs.end()});
        for (auto& t : traces) t = normalize_trace(t);
        Instant start, end;
        default_range(traces, start, end);
        if (!stack_start.empty()) start = parse_iso8601(stack_start);
        if (!stack_end.empty()) end = parse_iso8601(stack_end);
        const CohortStack stacked = stack(align_traces(traces, start, end));
        write_stack_matrix(stacked, stack_out);
        if (!stack_top.empty()) {
            TimeSeries top;
            top.timestamps = stacked.grid;
            top.values = stacked.top_line;
            write_series(top, stack_top);
        }
        std::cerr << "stack: " << stacked.subjects.size() << " subjects over "
                  << stacked.grid.size() << " grid points\n";
        return 0;
    }

    if (*annotate) {
        IntensityTrace trace = normalize_trace(read_trace(annotate_in));
        const AnnotationBands bands =
            annotate_bands(trace, parse_duration(band_width));
        std::ostringstream out;
        out << "band,start,end\n";
        out << "red," << format_iso8601(bands.lowest.start) << ','
            << format_iso8601(bands.lowest.end) << '\n';
        out << "green," << format_iso8601(bands.highest.start) << ','
            << format_iso8601(bands.highest.end) << '\n';
        out << "yellow," << format_iso8601(bands.steepest.start) << ','
            << format_iso8601(bands.steepest.end) << '\n';
        write_text(annotate_out, out.str());
        return 0;
    }

    if (*stability) {
        auto traces = load_traces({stability_inputs.begin(), stability_inputs.end()});
        for (auto& t : traces) t = normalize_trace(t);
        Instant start, end;
        default_range(traces, start, end);
        if (!stability_start.empty()) start = parse_iso8601(stability_start);
        if (!stability_end.empty()) end = parse_iso8601(stability_end);
        const SubgroupReport report =
            subgroup_stability(traces, groups, rng_seed, start, end);
        std::ostringstream out;
        out << "group,size,correlation\n";
        for (std::size_t g = 0; g < report.groups.size(); ++g) {
            out << g << ',' << report.groups[g].size() << ','
                << format_double(report.correlations[g]) << '\n';
        }
        write_text(stability_out, out.str());
        return 0;
    }

    if (*render) {
        if (render_kind == "line") {
            const IntensityTrace trace = normalize_trace(read_trace(render_in));
            std::optional<AnnotationBands> bands;
            if (!render_bands.empty()) bands = read_bands_file(render_bands);
            write_text(render_out, render_line_chart(trace, bands));
        } else {
            const CohortStack stacked = read_stack_matrix(render_in);
            write_text(render_out, render_stacked_chart(stacked));
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "ERROR usage: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "ERROR " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "ERROR internal: " << e.what() << "\n";
        return 3;
    }
}
