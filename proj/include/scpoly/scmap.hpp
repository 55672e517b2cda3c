#pragma once

#include <complex>
#include <vector>

#include "scpoly/geometry.hpp"
#include "scpoly/sc_types.hpp"

namespace scpoly {

inline constexpr double kDefaultTol = 1e-10;

/// F(z) for z in the closed upper half-plane, integrating along [i, z].
Complex evaluate(const SCMap& map, Complex z, double tol = kDefaultTol);

/// F(infinity): through the real waypoint R = z_{n-1} + 1 + (z_{n-1} - z_1),
/// then the 1/zeta tail.
Complex evaluate_at_infinity(const SCMap& map, double tol = kDefaultTol);

/// The real waypoint used for the vertex at infinity.
double infinity_waypoint(const Prevertices& z);

/// Vertices F(z_1), ..., F(z_{n-1}), F(infinity) of the map. The first comes
/// from the base point i; the rest are chained along the real axis.
std::vector<Complex> map_vertices(const SCMap& map, double tol = kDefaultTol);

/// Phi: the polygon of the normalized map with A = 1, B = 0. Standard-mode
/// exponents only; verifies that each interior angle equals alpha_j * pi
/// (AngleMismatch otherwise).
LabelledPolygon forward(const Prevertices& z, const ExponentVector& alpha, double tol = kDefaultTol);

/// Same formula for exponents that may reach or exceed 2. The result is not
/// an immersed polygon in general; angles are checked only at vertices with
/// alpha_j < 2.
LabelledPolygon forward_extended(const Prevertices& z, const ExponentVector& alpha,
                                 double tol = kDefaultTol);

/// Interior angles alpha_j * pi realized by the map at its vertices.
std::vector<double> realized_angles(const ExponentVector& alpha);

/// w -> a * w + b applied to every vertex. Throws ZeroScale for a = 0.
LabelledPolygon apply_similarity(const LabelledPolygon& poly, Complex a, Complex b);

}  // namespace scpoly
