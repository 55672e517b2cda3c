#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scpoly {

enum class ErrorKind {
    InvalidArgument,
    DegenerateSide,
    PointOnCurve,
    InvalidExponent,
    PathThroughSingularity,
    NoConvergence,
    AngleMismatch,
    ZeroScale,
    NotNormalized,
    NotIncreasing,
    OnBoundary,
    NotImmersedInput,
};

std::string_view to_string(ErrorKind kind);

// True for errors caused by bad input (as opposed to numerical failure).
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace scpoly
