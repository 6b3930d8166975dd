#include "perint/errors.hpp"

namespace perint {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptySeries: return "EmptySeries";
        case ErrorKind::NonMonotonic: return "NonMonotonic";
        case ErrorKind::SpanTooShort: return "SpanTooShort";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::UnevenSampling: return "UnevenSampling";
        case ErrorKind::TooFewSamples: return "TooFewSamples";
        case ErrorKind::NonPositiveFrequency: return "NonPositiveFrequency";
        case ErrorKind::EmptySpectrum: return "EmptySpectrum";
        case ErrorKind::EmptyTrace: return "EmptyTrace";
        case ErrorKind::InvalidRange: return "InvalidRange";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::InvalidCutoffs: return "InvalidCutoffs";
        case ErrorKind::RateMismatch: return "RateMismatch";
        case ErrorKind::StrideMismatch: return "StrideMismatch";
        case ErrorKind::EmptyIntersection: return "EmptyIntersection";
        case ErrorKind::TooFewSubjects: return "TooFewSubjects";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::MissingColumn: return "MissingColumn";
        case ErrorKind::TooFewRows: return "TooFewRows";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

}  // namespace perint
