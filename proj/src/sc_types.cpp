#include "scpoly/sc_types.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "scpoly/errors.hpp"

namespace scpoly {

ExponentVector::ExponentVector(std::vector<double> alphas, ExponentMode mode)
    : alphas_(std::move(alphas)), mode_(mode) {
    const std::size_t n = alphas_.size();
    if (n < 3) fail(ErrorKind::InvalidExponent, "need at least 3 exponents");
    for (std::size_t j = 0; j < n; ++j) {
        const double a = alphas_[j];
        if (!std::isfinite(a) || a <= 0.0) {
            fail(ErrorKind::InvalidExponent, "alpha_" + std::to_string(j + 1) + " must be positive");
        }
        if (mode_ == ExponentMode::standard && a >= 2.0) {
            fail(ErrorKind::InvalidExponent,
                 "alpha_" + std::to_string(j + 1) + " must be below 2 in standard mode");
        }
    }
    const double sum = std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
    if (std::abs(sum - static_cast<double>(n - 2)) > kExponentSumTol) {
        fail(ErrorKind::InvalidExponent, "exponents must sum to n - 2");
    }
}

Prevertices::Prevertices(std::vector<double> finite_points) : points_(std::move(finite_points)) {
    if (points_.size() < 2) fail(ErrorKind::InvalidArgument, "need at least 2 finite prevertices");
    for (double z : points_) {
        if (!std::isfinite(z)) fail(ErrorKind::InvalidArgument, "prevertex is not finite");
    }
    if (points_[0] != -1.0 || points_[1] != 0.0) {
        fail(ErrorKind::NotNormalized, "prevertices must start with -1, 0");
    }
    for (std::size_t j = 1; j < points_.size(); ++j) {
        if (!(points_[j] > points_[j - 1])) {
            fail(ErrorKind::NotIncreasing, "prevertices must be strictly increasing");
        }
    }
}

SCMap::SCMap(Prevertices prevertices, ExponentVector exponents, Complex a, Complex b)
    : prevertices_(std::move(prevertices)), exponents_(std::move(exponents)), a_(a), b_(b) {
    if (prevertices_.polygon_size() != exponents_.size()) {
        fail(ErrorKind::InvalidArgument, "prevertex count must be exponent count - 1");
    }
    if (a_ == Complex(0.0, 0.0)) fail(ErrorKind::ZeroScale, "A must be nonzero");
    if (!std::isfinite(a_.real()) || !std::isfinite(a_.imag()) || !std::isfinite(b_.real()) ||
        !std::isfinite(b_.imag())) {
        fail(ErrorKind::InvalidArgument, "A and B must be finite");
    }
}

}  // namespace scpoly
