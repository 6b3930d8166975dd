#ifndef PERINT_IO_HPP
#define PERINT_IO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perint/intensity.hpp"
#include "perint/preprocess.hpp"
#include "perint/timeseries.hpp"

namespace perint {

/// Parses an ISO-8601 timestamp with a mandatory offset (Z or +-HH:MM) to
/// UTC seconds since the epoch. Throws ParseError. Files without offsets
/// are rejected so DST shifts can never smear the 24 h phase.
Instant parse_iso8601(const std::string& text);

/// UTC ISO-8601 with a fractional part only when needed; the fractional
/// digits are the shortest that round-trip the exact double.
std::string format_iso8601(Instant t);

/// Duration literals of the form <number><unit> with units s, m, h, d.
Duration parse_duration(const std::string& text);

/// Shortest decimal that round-trips the exact double.
std::string format_double(double v);

struct ReadReport {
    std::vector<std::string> warnings;
};

/// CSV rows `timestamp,stream_id[,weight]`; output sorted by timestamp.
EventLog read_events(const std::filesystem::path& path);

/// CSV rows `timestamp,x,y,z`; the nominal rate is the reciprocal of the
/// median inter-sample gap. Out-of-order rows are sorted with a warning.
TriaxialSeries read_accel(const std::filesystem::path& path,
                          ReadReport* report = nullptr);

/// Intermediate series files: header `timestamp,value`, ISO-8601 stamps.
void write_series(const TimeSeries& series, const std::filesystem::path& path);
TimeSeries read_series(const std::filesystem::path& path);

/// Trace files: header `center_iso8601,intensity,coverage`. Round-trip is
/// bitwise exact. Reading a header-only file throws EmptyTrace.
void write_trace(const IntensityTrace& trace, const std::filesystem::path& path);
IntensityTrace read_trace(const std::filesystem::path& path);

/// Flat `key = value` run configuration with `#` comments.
struct RunConfig {
    WindowSpec spec;
    Duration bin_width = minutes(15);
    int filter_order = 4;
    double filter_low_hz = 0.5;
    double filter_high_hz = 20.0;
    Duration downsample_bucket = seconds(60);
    std::vector<std::string> subjects;
    std::vector<std::filesystem::path> inputs;
};

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace perint

#endif
