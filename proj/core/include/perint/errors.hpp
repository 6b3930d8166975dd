#ifndef PERINT_ERRORS_HPP
#define PERINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace perint {

enum class ErrorKind {
    EmptySeries,
    NonMonotonic,
    SpanTooShort,
    EmptyInput,
    UnevenSampling,
    TooFewSamples,
    NonPositiveFrequency,
    EmptySpectrum,
    EmptyTrace,
    InvalidRange,
    GridMismatch,
    InvalidCutoffs,
    RateMismatch,
    StrideMismatch,
    EmptyIntersection,
    TooFewSubjects,
    ParseError,
    MissingColumn,
    TooFewRows,
    IoError,
    InvalidSpec,
};

const char* to_string(ErrorKind kind);

/// All library failures are reported as Error carrying a machine-usable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace perint

#endif
