#ifndef PERINT_INTENSITY_HPP
#define PERINT_INTENSITY_HPP

#include <string>
#include <vector>

#include "perint/timeseries.hpp"

namespace perint {

/// Periodicity intensity per sliding window, stamped at window centers.
struct IntensityTrace {
    std::vector<Instant> centers;
    std::vector<double> intensities;
    std::vector<double> coverage;
    WindowSpec spec;
    std::string subject_id;

    std::size_t size() const { return centers.size(); }
    bool empty() const { return centers.empty(); }
};

/// Slides the window plan across the series and evaluates band energy per
/// window. Windows with coverage below spec.min_coverage (or with fewer
/// than 8 samples) emit intensity 0, which is what produces the flat runs
/// over data gaps. Method::Auto routes each window to the FFT periodogram
/// when it is evenly sampled and to Lomb-Scargle otherwise.
IntensityTrace compute_intensity_trace(const TimeSeries& series,
                                       const WindowSpec& spec,
                                       const std::string& subject_id = "");

/// Min-max rescaling to [0, 1]; a constant trace maps to all zeros.
IntensityTrace normalize_trace(const IntensityTrace& trace);

}  // namespace perint

#endif
