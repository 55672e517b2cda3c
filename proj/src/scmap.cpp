#include "scpoly/scmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scpoly/errors.hpp"
#include "scpoly/quadrature.hpp"

namespace scpoly {

namespace {

constexpr Complex kBasePoint{0.0, 1.0};

std::vector<Complex> bare_vertices(const SCMap& map, double tol) {
    const auto& z = map.prevertices();
    const std::size_t finite = z.finite_count();
    std::vector<Complex> w;
    w.reserve(finite + 1);
    w.push_back(integrate_sc(map, kBasePoint, Complex(z[0], 0.0), tol));
    for (std::size_t j = 0; j + 1 < finite; ++j) {
        w.push_back(w.back() + integrate_sc(map, Complex(z[j], 0.0), Complex(z[j + 1], 0.0), tol));
    }
    const double r = infinity_waypoint(z);
    w.push_back(w.back() + integrate_sc(map, Complex(z[finite - 1], 0.0), Complex(r, 0.0), tol) +
                integrate_to_infinity(map, r, tol));
    return w;
}

LabelledPolygon checked_polygon(const SCMap& map, double tol, bool extended) {
    const auto w = map_vertices(map, tol);
    LabelledPolygon poly(w);
    const auto angles = interior_angles(poly);
    const auto& alpha = map.exponents();
    const long n = static_cast<long>(alpha.size());
    for (long j = 0; j < n; ++j) {
        if (extended && alpha[static_cast<std::size_t>(j)] >= 2.0) continue;
        // Vertex errors are relative to the polygon scale; a short side turns
        // them into a proportionally larger angle error.
        const double shortest = std::min(std::abs(poly.at_cyclic(j + 1) - poly.at_cyclic(j)),
                                         std::abs(poly.at_cyclic(j) - poly.at_cyclic(j - 1)));
        const double allowed = 10.0 * tol * std::max(1.0, poly.scale() / shortest);
        const double expected = alpha[static_cast<std::size_t>(j)] * std::numbers::pi;
        const double got = angles.values[static_cast<std::size_t>(j)];
        if (std::abs(got - expected) > allowed) {
            fail(ErrorKind::AngleMismatch,
                 "interior angle at vertex " + std::to_string(j + 1) + " is " +
                     std::to_string(got) + ", expected " + std::to_string(expected));
        }
    }
    return poly;
}

}  // namespace

double infinity_waypoint(const Prevertices& z) {
    const double last = z[z.finite_count() - 1];
    return last + 1.0 + (last - z[0]);
}

Complex evaluate(const SCMap& map, Complex z, double tol) {
    return map.scale() * integrate_sc(map, kBasePoint, z, tol) + map.offset();
}

Complex evaluate_at_infinity(const SCMap& map, double tol) {
    const double r = infinity_waypoint(map.prevertices());
    const Complex bare = integrate_sc(map, kBasePoint, Complex(r, 0.0), tol) + integrate_to_infinity(map, r, tol);
    return map.scale() * bare + map.offset();
}

std::vector<Complex> map_vertices(const SCMap& map, double tol) {
    auto w = bare_vertices(map, tol);
    if (map.scale() != Complex(1.0, 0.0) || map.offset() != Complex(0.0, 0.0)) {
        for (auto& v : w) v = map.scale() * v + map.offset();
    }
    return w;
}

LabelledPolygon forward(const Prevertices& z, const ExponentVector& alpha, double tol) {
    if (alpha.mode() != ExponentMode::standard) {
        fail(ErrorKind::InvalidExponent, "forward requires standard-mode exponents");
    }
    return checked_polygon(SCMap(z, alpha), tol, false);
}

LabelledPolygon forward_extended(const Prevertices& z, const ExponentVector& alpha, double tol) {
    return checked_polygon(SCMap(z, alpha), tol, true);
}

std::vector<double> realized_angles(const ExponentVector& alpha) {
    std::vector<double> out;
    out.reserve(alpha.size());
    for (double a : alpha.values()) out.push_back(a * std::numbers::pi);
    return out;
}

LabelledPolygon apply_similarity(const LabelledPolygon& poly, Complex a, Complex b) {
    if (a == Complex(0.0, 0.0)) fail(ErrorKind::ZeroScale, "similarity scale must be nonzero");
    std::vector<PlanePoint> w;
    w.reserve(poly.size());
    for (const auto& v : poly.vertices()) w.push_back(a * v + b);
    return LabelledPolygon(std::move(w));
}

}  // namespace scpoly
