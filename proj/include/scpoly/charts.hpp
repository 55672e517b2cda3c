#pragma once

#include <span>
#include <utility>
#include <vector>

#include "scpoly/sc_types.hpp"

namespace scpoly {

/// A point of R^{2n-4}: n - 3 prevertex-gap coordinates followed by n - 1
/// exponent coordinates.
struct ChartPoint {
    int n = 0;
    std::vector<double> z;
    std::vector<double> a;

    // Throws InvalidArgument unless the sizes match n and every entry is finite.
    void validate() const;
    std::size_t dimension() const { return z.size() + a.size(); }

    friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

/// (log z_3, log(z_4 - z_3), ..., log(z_{n-1} - z_{n-2})).
std::vector<double> z_chart(const Prevertices& z);

/// Inverse of z_chart: z_3 = e^{c_1}, z_{k+1} = z_k + e^{c_{k-1}}.
Prevertices z_unchart(std::span<const double> coords);

/// Orthonormal basis of {v in R^n : sum v = 0}, the Gram-Schmidt
/// orthonormalization of (e_1 - e_2, e_2 - e_3, ...). Row k is
/// (1, ..., 1, -k, 0, ..., 0) / sqrt(k (k + 1)) with k leading ones.
std::vector<std::vector<double>> exponent_direction_basis(std::size_t n);

/// Distance from the barycenter c = (n-2)/n along unit direction u to the
/// boundary of the exponent polytope (0, 2)^n.
double boundary_distance(std::span<const double> direction);

/// Radial chart of the exponent polytope centred at the barycenter:
/// alpha = c + r u maps to (r / (rho(u) - r)) u in the fixed basis.
/// Throws OnBoundary when some alpha_j is not strictly inside (0, 2).
std::vector<double> a_chart(const ExponentVector& alpha);

/// Inverse of a_chart. The result lies strictly inside (0, 2)^n and its
/// left-to-right floating-point sum is exactly n - 2.
ExponentVector a_unchart(std::span<const double> coords);

/// Chart coordinates of a map; A and B are discarded.
ChartPoint moduli_chart(const SCMap& map);
std::pair<Prevertices, ExponentVector> moduli_unchart(const ChartPoint& pt);

}  // namespace scpoly
