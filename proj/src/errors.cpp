#include "scpoly/errors.hpp"

namespace scpoly {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DegenerateSide: return "DegenerateSide";
        case ErrorKind::PointOnCurve: return "PointOnCurve";
        case ErrorKind::InvalidExponent: return "InvalidExponent";
        case ErrorKind::PathThroughSingularity: return "PathThroughSingularity";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::AngleMismatch: return "AngleMismatch";
        case ErrorKind::ZeroScale: return "ZeroScale";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::NotIncreasing: return "NotIncreasing";
        case ErrorKind::OnBoundary: return "OnBoundary";
        case ErrorKind::NotImmersedInput: return "NotImmersedInput";
    }
    return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::PathThroughSingularity:
        case ErrorKind::NoConvergence:
        case ErrorKind::AngleMismatch:
            return false;
        default:
            return true;
    }
}

}  // namespace scpoly
