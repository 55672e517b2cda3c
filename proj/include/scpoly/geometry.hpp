#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace scpoly {

using Complex = std::complex<double>;
using PlanePoint = Complex;

// Coincidence tolerance, relative to the polygon's scale().
inline constexpr double kCoincidenceTol = 1e-12;
// Angles closer than this to 0 or 2*pi count as straight (fold-back) vertices.
inline constexpr double kStraightAngleTol = 1e-10;
// Tolerance on the interior-angle sum (n - 2) * pi.
inline constexpr double kAngleSumTol = 1e-6;

/// An ordered vertex list w_1..w_n, labelled counter-clockwise.
///
/// Construction checks n >= 3, finite coordinates and that cyclically
/// consecutive vertices are distinct; non-consecutive vertices may coincide.
class LabelledPolygon {
public:
    explicit LabelledPolygon(std::vector<PlanePoint> vertices);

    std::size_t size() const noexcept { return vertices_.size(); }
    const PlanePoint& operator[](std::size_t j) const { return vertices_[j]; }
    // Cyclic access, any integer index.
    const PlanePoint& at_cyclic(long j) const;
    std::span<const PlanePoint> vertices() const noexcept { return vertices_; }

    // Diagonal of the bounding box; the length scale for all tolerances.
    double scale() const noexcept { return scale_; }

private:
    std::vector<PlanePoint> vertices_;
    double scale_ = 0.0;
};

struct AngleVector {
    std::vector<double> values;
    // Set when some angle is within kStraightAngleTol of 0 or 2*pi.
    bool has_straight_vertex = false;
};

/// Interior angle at each vertex: the clockwise angle from the ray towards
/// w_{j-1} to the ray towards w_{j+1}, normalized into (0, 2*pi].
AngleVector interior_angles(const LabelledPolygon& poly);

/// Sum of the signed exterior angles pi - theta_j.
double turning_angle_sum(const LabelledPolygon& poly);

/// Distance from p to the closest point of the polygon's trace.
double distance_to_trace(const LabelledPolygon& poly, PlanePoint p);

/// Winding number by accumulation of principal arguments. Throws
/// PointOnCurve when p is within tolerance of the trace.
int winding_number(const LabelledPolygon& poly, PlanePoint p);

/// Sign of the orientation determinant of (a, b, c): +1 for a left turn.
/// Exact: a floating-point filter with a certified bound falls back to
/// rational arithmetic.
int orientation(PlanePoint a, PlanePoint b, PlanePoint c);

/// Closed-segment intersection test built on orientation().
bool segments_intersect(PlanePoint p1, PlanePoint p2, PlanePoint q1, PlanePoint q2);

/// True iff the boundary curve is injective.
bool is_simple(const LabelledPolygon& poly);

struct ImmersionReport {
    bool angles_in_range = false;      // every theta_j strictly inside (0, 2*pi)
    bool angle_sum_ok = false;         // sum theta_j == (n - 2) * pi
    bool winding_nonnegative = false;  // no sampled point has negative winding
    bool all() const { return angles_in_range && angle_sum_ok && winding_nonnegative; }
};

/// Necessary (not sufficient) conditions for the polygon to be immersed.
///
/// `realized_angles`, when given, are the interior angles the polygon was
/// built with (e.g. alpha_j * pi from a Schwarz-Christoffel map). They must
/// agree with the geometric angles modulo 2*pi and replace them in the range
/// check, since vertices alone only determine angles modulo 2*pi.
ImmersionReport check_immersion_necessary(
    const LabelledPolygon& poly,
    std::optional<std::span<const double>> realized_angles = std::nullopt);

/// Points where the winding number changes most: offsets around proper
/// crossings of non-adjacent sides and midpoints between consecutive
/// crossings along a side. Points near any side-supporting line are dropped.
std::vector<PlanePoint> crossing_probe_points(const LabelledPolygon& poly);

/// Search for a point of winding number >= 2. Probes crossing neighbourhoods
/// first, then stratified random points in the bounding box, evaluating at
/// most `budget` candidates. Deterministic for a given seed.
std::optional<PlanePoint> find_multiwound_witness(const LabelledPolygon& poly,
                                                  int budget,
                                                  std::uint64_t seed = 0x5eedULL);

}  // namespace scpoly
