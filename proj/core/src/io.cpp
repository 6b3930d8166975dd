#include "perint/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace perint {
namespace {

// Civil-date conversions (proleptic Gregorian, days since 1970-01-01).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

std::string loc(const std::filesystem::path& path, std::size_t lineno) {
    return path.string() + ":" + std::to_string(lineno);
}

bool parse_fixed_uint(const std::string& s, std::size_t pos, std::size_t len,
                      unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + static_cast<unsigned>(s[i] - '0');
    }
    out = v;
    return true;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

double parse_number(const std::string& s, const std::string& context) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    while (begin < end && *begin == ' ') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorKind::ParseError, context + ": bad number '" + s + "'");
    }
    return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    return in;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

Instant parse_iso8601(const std::string& text) {
    // YYYY-MM-DDTHH:MM:SS[.frac](Z|+-HH:MM)
    unsigned year = 0, month = 0, day = 0, hh = 0, mm = 0, ss = 0;
    const auto fail = [&]() -> Instant {
        throw Error(ErrorKind::ParseError, "bad ISO-8601 timestamp '" + text + "'");
    };
    if (text.size() < 20) return fail();
    if (!parse_fixed_uint(text, 0, 4, year) || text[4] != '-' ||
        !parse_fixed_uint(text, 5, 2, month) || text[7] != '-' ||
        !parse_fixed_uint(text, 8, 2, day) || text[10] != 'T' ||
        !parse_fixed_uint(text, 11, 2, hh) || text[13] != ':' ||
        !parse_fixed_uint(text, 14, 2, mm) || text[16] != ':' ||
        !parse_fixed_uint(text, 17, 2, ss)) {
        return fail();
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hh > 23 || mm > 59 ||
        ss > 60) {
        return fail();
    }

    std::size_t pos = 19;
    double frac = 0.0;
    if (pos < text.size() && text[pos] == '.') {
        std::size_t end = pos + 1;
        while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
        if (end == pos + 1) return fail();
        const std::string digits = "0." + text.substr(pos + 1, end - pos - 1);
        frac = parse_number(digits, "fractional seconds");
        pos = end;
    }

    if (pos >= text.size()) return fail();  // offset is mandatory
    double offset_seconds = 0.0;
    if (text[pos] == 'Z') {
        if (pos + 1 != text.size()) return fail();
    } else if (text[pos] == '+' || text[pos] == '-') {
        unsigned oh = 0, om = 0;
        if (pos + 6 != text.size() || !parse_fixed_uint(text, pos + 1, 2, oh) ||
            text[pos + 3] != ':' || !parse_fixed_uint(text, pos + 4, 2, om)) {
            return fail();
        }
        offset_seconds = (oh * 3600.0 + om * 60.0) * (text[pos] == '+' ? 1.0 : -1.0);
    } else {
        return fail();
    }

    const std::int64_t days = days_from_civil(year, month, day);
    const double local = static_cast<double>(days) * 86400.0 + hh * 3600.0 +
                         mm * 60.0 + static_cast<double>(ss) + frac;
    return local - offset_seconds;
}

std::string format_iso8601(Instant t) {
    const double whole = std::floor(t);
    const double frac = t - whole;
    const auto total = static_cast<std::int64_t>(whole);
    std::int64_t days = total / 86400;
    std::int64_t rem = total % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t year = 0;
    unsigned month = 0, day = 0;
    civil_from_days(days, year, month, day);
    const auto hh = static_cast<unsigned>(rem / 3600);
    const auto mm = static_cast<unsigned>((rem % 3600) / 60);
    const auto ss = static_cast<unsigned>(rem % 60);

    char stamp[32];
    std::snprintf(stamp, sizeof(stamp), "%04lld-%02u-%02uT%02u:%02u:%02u",
                  static_cast<long long>(year), month, day, hh, mm, ss);
    std::string out = stamp;
    if (frac > 0.0) {
        char buf[64];
        const auto [ptr, ec] =
            std::to_chars(buf, buf + sizeof(buf), frac, std::chars_format::fixed);
        std::string digits(buf, ptr);  // "0.xxxx"
        out += digits.substr(1);
    }
    out += 'Z';
    return out;
}

Duration parse_duration(const std::string& text) {
    if (text.empty()) {
        throw Error(ErrorKind::ParseError, "empty duration");
    }
    const char unit = text.back();
    double scale = 0.0;
    switch (unit) {
        case 's': scale = 1.0; break;
        case 'm': scale = 60.0; break;
        case 'h': scale = 3600.0; break;
        case 'd': scale = 86400.0; break;
        default:
            throw Error(ErrorKind::ParseError,
                        "duration '" + text + "' must end in s, m, h or d");
    }
    const double v = parse_number(text.substr(0, text.size() - 1),
                                  "duration '" + text + "'");
    if (!(v > 0.0)) {
        throw Error(ErrorKind::ParseError, "duration must be positive: " + text);
    }
    return v * scale;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

EventLog read_events(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    EventLog log;
    log.subject_id = path.stem().string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() < 2) {
            throw Error(ErrorKind::MissingColumn,
                        loc(path, lineno) + ": expected timestamp,stream_id[,weight]");
        }
        Event e;
        try {
            e.timestamp = parse_iso8601(fields[0]);
        } catch (const Error&) {
            throw Error(ErrorKind::ParseError,
                        loc(path, lineno) + ": bad timestamp '" + fields[0] + "'");
        }
        e.stream_id = fields[1];
        if (fields.size() >= 3) {
            e.weight = parse_number(fields[2],
                                    loc(path, lineno));
            if (e.weight < 0.0) {
                throw Error(ErrorKind::ParseError,
                            loc(path, lineno) + ": negative weight");
            }
        }
        log.events.push_back(std::move(e));
    }
    std::stable_sort(log.events.begin(), log.events.end(),
                     [](const Event& a, const Event& b) {
                         return a.timestamp < b.timestamp;
                     });
    return log;
}

TriaxialSeries read_accel(const std::filesystem::path& path, ReadReport* report) {
    std::ifstream in = open_input(path);
    TriaxialSeries series;
    std::string line;
    std::size_t lineno = 0;
    bool sorted = true;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 4) {
            throw Error(ErrorKind::MissingColumn,
                        loc(path, lineno) + ": expected timestamp,x,y,z");
        }
        Instant t;
        try {
            t = parse_iso8601(fields[0]);
        } catch (const Error&) {
            throw Error(ErrorKind::ParseError,
                        loc(path, lineno) + ": bad timestamp '" + fields[0] + "'");
        }
        const std::string ctx = loc(path, lineno);
        std::array<double, 3> v{parse_number(fields[1], ctx),
                                parse_number(fields[2], ctx),
                                parse_number(fields[3], ctx)};
        if (!series.timestamps.empty() && t < series.timestamps.back()) {
            sorted = false;
        }
        series.timestamps.push_back(t);
        series.xyz.push_back(v);
    }
    if (series.size() < 100) {
        throw Error(ErrorKind::TooFewRows,
                    path.string() + ": need at least 100 accelerometer rows");
    }
    if (!sorted) {
        std::vector<std::size_t> order(series.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return series.timestamps[a] < series.timestamps[b];
                         });
        TriaxialSeries tmp;
        tmp.timestamps.reserve(series.size());
        tmp.xyz.reserve(series.size());
        for (std::size_t i : order) {
            tmp.timestamps.push_back(series.timestamps[i]);
            tmp.xyz.push_back(series.xyz[i]);
        }
        series.timestamps = std::move(tmp.timestamps);
        series.xyz = std::move(tmp.xyz);
        if (report != nullptr) {
            report->warnings.push_back(path.string() +
                                       ": rows were out of order; sorted");
        }
    }

    std::vector<double> gaps;
    gaps.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        gaps.push_back(series.timestamps[i] - series.timestamps[i - 1]);
    }
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    const double med = gaps[gaps.size() / 2];
    series.nominal_rate = med > 0.0 ? 1.0 / med : 0.0;
    return series;
}

void write_series(const TimeSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << "timestamp,value\n";
    if (!series.unit_label.empty()) {
        out << "# unit = " << series.unit_label << "\n";
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_iso8601(series.timestamps[i]) << ','
            << format_double(series.values[i]) << '\n';
    }
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed for " + path.string());
    }
}

TimeSeries read_series(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "timestamp,value") {
        throw Error(ErrorKind::ParseError,
                    path.string() + ": expected header 'timestamp,value'");
    }
    TimeSeries series;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line.rfind("# unit = ", 0) == 0) {
            series.unit_label = line.substr(9);
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 2) {
            throw Error(ErrorKind::ParseError,
                        loc(path, lineno) + ": expected timestamp,value");
        }
        series.timestamps.push_back(parse_iso8601(fields[0]));
        series.values.push_back(parse_number(
            fields[1], loc(path, lineno)));
    }
    return series;
}

namespace {

const char* method_name(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Fft: return "fft";
        case Method::LombScargle: return "lomb-scargle";
    }
    return "auto";
}

Method parse_method(const std::string& s) {
    if (s == "auto") return Method::Auto;
    if (s == "fft") return Method::Fft;
    if (s == "lomb-scargle") return Method::LombScargle;
    throw Error(ErrorKind::ParseError, "unknown method '" + s + "'");
}

}  // namespace

void write_trace(const IntensityTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << "center_iso8601,intensity,coverage\n";
    out << "# subject = " << trace.subject_id << "\n";
    out << "# target_period = " << format_double(trace.spec.target_period) << "s\n";
    out << "# window_length = " << format_double(trace.spec.window_length) << "s\n";
    out << "# stride = " << format_double(trace.spec.stride) << "s\n";
    out << "# period_tolerance = " << format_double(trace.spec.period_tolerance)
        << "s\n";
    out << "# method = " << method_name(trace.spec.method) << "\n";
    out << "# min_coverage = " << format_double(trace.spec.min_coverage) << "\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << format_iso8601(trace.centers[i]) << ','
            << format_double(trace.intensities[i]) << ','
            << format_double(trace.coverage[i]) << '\n';
    }
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed for " + path.string());
    }
}

IntensityTrace read_trace(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) ||
        strip_cr(line) != "center_iso8601,intensity,coverage") {
        throw Error(ErrorKind::ParseError,
                    path.string() +
                        ": expected header 'center_iso8601,intensity,coverage'");
    }
    IntensityTrace trace;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const std::size_t eq = line.find(" = ");
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string value = line.substr(eq + 3);
            if (key == "subject") trace.subject_id = value;
            else if (key == "target_period") trace.spec.target_period = parse_duration(value);
            else if (key == "window_length") trace.spec.window_length = parse_duration(value);
            else if (key == "stride") trace.spec.stride = parse_duration(value);
            else if (key == "period_tolerance") trace.spec.period_tolerance = parse_duration(value);
            else if (key == "method") trace.spec.method = parse_method(value);
            else if (key == "min_coverage") trace.spec.min_coverage = parse_number(value, key);
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 3) {
            throw Error(ErrorKind::ParseError,
                        loc(path, lineno) + ": expected center,intensity,coverage");
        }
        const std::string ctx = loc(path, lineno);
        trace.centers.push_back(parse_iso8601(fields[0]));
        trace.intensities.push_back(parse_number(fields[1], ctx));
        trace.coverage.push_back(parse_number(fields[2], ctx));
    }
    if (trace.empty()) {
        throw Error(ErrorKind::EmptyTrace, path.string() + ": trace has no rows");
    }
    return trace;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    RunConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::ParseError,
                        loc(path, lineno) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string ctx = loc(path, lineno);

        if (key == "target_period") config.spec.target_period = parse_duration(value);
        else if (key == "window_length") config.spec.window_length = parse_duration(value);
        else if (key == "stride") config.spec.stride = parse_duration(value);
        else if (key == "period_tolerance") config.spec.period_tolerance = parse_duration(value);
        else if (key == "method") config.spec.method = parse_method(value);
        else if (key == "min_coverage") config.spec.min_coverage = parse_number(value, ctx);
        else if (key == "bin_width") config.bin_width = parse_duration(value);
        else if (key == "filter_order") config.filter_order = static_cast<int>(parse_number(value, ctx));
        else if (key == "filter_low_hz") config.filter_low_hz = parse_number(value, ctx);
        else if (key == "filter_high_hz") config.filter_high_hz = parse_number(value, ctx);
        else if (key == "downsample_bucket") config.downsample_bucket = parse_duration(value);
        else if (key == "subject") config.subjects.push_back(value);
        else if (key == "input") {
            std::filesystem::path p(value);
            if (p.is_relative()) p = path.parent_path() / p;
            if (!std::filesystem::exists(p)) {
                throw Error(ErrorKind::IoError,
                            ctx + ": input path not found: " + p.string());
            }
            config.inputs.push_back(p);
        } else {
            throw Error(ErrorKind::ParseError, ctx + ": unknown key '" + key + "'");
        }
    }
    config.spec.validate();
    return config;
}

}  // namespace perint
