#include "scpoly/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "scpoly/errors.hpp"
#include "scpoly/random.hpp"

namespace scpoly {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Witness candidates must stay this far (relative to scale) from every
// side-supporting line so that winding accumulation is well conditioned.
constexpr double kWitnessLineTol = 1e-9;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

int sign_of(const Rational& r) { return r.sign(); }

int exact_orientation(PlanePoint a, PlanePoint b, PlanePoint c) {
    const Rational ax(a.real()), ay(a.imag());
    const Rational bx(b.real()), by(b.imag());
    const Rational cx(c.real()), cy(c.imag());
    return sign_of((bx - ax) * (cy - ay) - (by - ay) * (cx - ax));
}

// Sign of (a - v) . (b - v), exactly.
int exact_dot_sign(PlanePoint v, PlanePoint a, PlanePoint b) {
    const Rational vx(v.real()), vy(v.imag());
    const Rational ax(a.real()), ay(a.imag());
    const Rational bx(b.real()), by(b.imag());
    return sign_of((ax - vx) * (bx - vx) + (ay - vy) * (by - vy));
}

// Coordinates are exact doubles, so bounding-box comparisons are exact.
bool on_closed_segment_collinear(PlanePoint p, PlanePoint a, PlanePoint b) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

double point_segment_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double point_line_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
    return std::abs(cross(b - a, p - a)) / std::abs(b - a);
}

bool clear_of_side_lines(const LabelledPolygon& poly, PlanePoint p) {
    const double tol = kWitnessLineTol * poly.scale();
    const std::size_t n = poly.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (point_line_distance(p, poly[j], poly.at_cyclic(static_cast<long>(j) + 1)) < tol) {
            return false;
        }
    }
    return true;
}

// Winding without throwing; nullopt when p is too close to the trace.
std::optional<int> try_winding(const LabelledPolygon& poly, PlanePoint p) {
    if (distance_to_trace(poly, p) <= kCoincidenceTol * poly.scale()) return std::nullopt;
    double total = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Complex a = poly[j] - p;
        const Complex b = poly.at_cyclic(static_cast<long>(j) + 1) - p;
        total += std::atan2(cross(a, b), dot(a, b));
    }
    const double turns = total / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) >= 1e-6) return std::nullopt;
    return static_cast<int>(rounded);
}

struct Crossing {
    std::size_t side_a;
    std::size_t side_b;
    PlanePoint point;
};

bool sides_adjacent(std::size_t i, std::size_t j, std::size_t n) {
    return j == i + 1 || (i == 0 && j == n - 1);
}

// Proper (transverse) crossings between non-adjacent sides.
std::vector<Crossing> proper_crossings(const LabelledPolygon& poly) {
    std::vector<Crossing> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const PlanePoint p1 = poly[i];
        const PlanePoint p2 = poly.at_cyclic(static_cast<long>(i) + 1);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (sides_adjacent(i, j, n)) continue;
            const PlanePoint q1 = poly[j];
            const PlanePoint q2 = poly.at_cyclic(static_cast<long>(j) + 1);
            const int o1 = orientation(p1, p2, q1);
            const int o2 = orientation(p1, p2, q2);
            const int o3 = orientation(q1, q2, p1);
            const int o4 = orientation(q1, q2, p2);
            if (o1 * o2 < 0 && o3 * o4 < 0) {
                const Complex d1 = p2 - p1;
                const Complex d2 = q2 - q1;
                const double t = cross(q1 - p1, d2) / cross(d1, d2);
                out.push_back({i, j, p1 + t * d1});
            }
        }
    }
    return out;
}

}  // namespace

LabelledPolygon::LabelledPolygon(std::vector<PlanePoint> vertices)
    : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) fail(ErrorKind::InvalidArgument, "polygon needs at least 3 vertices");
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = -lo_x;
    for (const auto& w : vertices_) {
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
            fail(ErrorKind::InvalidArgument, "polygon vertex is not finite");
        }
        lo_x = std::min(lo_x, w.real());
        hi_x = std::max(hi_x, w.real());
        lo_y = std::min(lo_y, w.imag());
        hi_y = std::max(hi_y, w.imag());
    }
    scale_ = std::hypot(hi_x - lo_x, hi_y - lo_y);
    for (std::size_t j = 0; j < n; ++j) {
        const double side = std::abs(vertices_[(j + 1) % n] - vertices_[j]);
        if (!(side > kCoincidenceTol * scale_)) {
            fail(ErrorKind::DegenerateSide,
                 "vertices " + std::to_string(j + 1) + " and " + std::to_string((j + 1) % n + 1) +
                     " coincide");
        }
    }
}

const PlanePoint& LabelledPolygon::at_cyclic(long j) const {
    const long n = static_cast<long>(vertices_.size());
    return vertices_[static_cast<std::size_t>(((j % n) + n) % n)];
}

AngleVector interior_angles(const LabelledPolygon& poly) {
    AngleVector out;
    const long n = static_cast<long>(poly.size());
    out.values.reserve(poly.size());
    for (long j = 0; j < n; ++j) {
        const Complex to_prev = poly.at_cyclic(j - 1) - poly.at_cyclic(j);
        const Complex to_next = poly.at_cyclic(j + 1) - poly.at_cyclic(j);
        // arg(to_prev / to_next), computed without forming the quotient.
        double theta = std::atan2(cross(to_next, to_prev), dot(to_next, to_prev));
        if (theta <= 0.0) theta += kTwoPi;
        if (theta < kStraightAngleTol || theta > kTwoPi - kStraightAngleTol) {
            out.has_straight_vertex = true;
        }
        out.values.push_back(theta);
    }
    return out;
}

double turning_angle_sum(const LabelledPolygon& poly) {
    double total = 0.0;
    for (double theta : interior_angles(poly).values) total += std::numbers::pi - theta;
    return total;
}

double distance_to_trace(const LabelledPolygon& poly, PlanePoint p) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t j = 0; j < n; ++j) {
        best = std::min(best, point_segment_distance(p, poly[j], poly.at_cyclic(static_cast<long>(j) + 1)));
    }
    return best;
}

int winding_number(const LabelledPolygon& poly, PlanePoint p) {
    auto w = try_winding(poly, p);
    if (!w) fail(ErrorKind::PointOnCurve, "point lies on the polygon trace");
    return *w;
}

int orientation(PlanePoint a, PlanePoint b, PlanePoint c) {
    // Shewchuk's orient2d filter: |det| > errbound certifies the sign.
    constexpr double eps = std::numeric_limits<double>::epsilon() / 2.0;
    constexpr double errbound = (3.0 + 16.0 * eps) * eps;
    const double left = (b.real() - a.real()) * (c.imag() - a.imag());
    const double right = (b.imag() - a.imag()) * (c.real() - a.real());
    const double det = left - right;
    const double detsum = std::abs(left) + std::abs(right);
    if (std::abs(det) > errbound * detsum) return det > 0.0 ? 1 : -1;
    return exact_orientation(a, b, c);
}

bool segments_intersect(PlanePoint p1, PlanePoint p2, PlanePoint q1, PlanePoint q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_closed_segment_collinear(q1, p1, p2)) return true;
    if (o2 == 0 && on_closed_segment_collinear(q2, p1, p2)) return true;
    if (o3 == 0 && on_closed_segment_collinear(p1, q1, q2)) return true;
    if (o4 == 0 && on_closed_segment_collinear(p2, q1, q2)) return true;
    return false;
}

bool is_simple(const LabelledPolygon& poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (poly[i] == poly[j]) return false;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const PlanePoint p1 = poly[i];
        const PlanePoint p2 = poly.at_cyclic(static_cast<long>(i) + 1);
        for (std::size_t j = i + 1; j < n; ++j) {
            const PlanePoint q1 = poly[j];
            const PlanePoint q2 = poly.at_cyclic(static_cast<long>(j) + 1);
            if (sides_adjacent(i, j, n)) {
                // Shared vertex v; the sides overlap iff they fold back onto
                // each other.
                const bool wraps = (i == 0 && j == n - 1);
                const PlanePoint v = wraps ? p1 : p2;
                const PlanePoint a = wraps ? p2 : p1;
                const PlanePoint b = wraps ? q1 : q2;
                if (orientation(a, v, b) == 0 && exact_dot_sign(v, a, b) > 0) return false;
                continue;
            }
            if (segments_intersect(p1, p2, q1, q2)) return false;
        }
    }
    return true;
}

std::vector<PlanePoint> crossing_probe_points(const LabelledPolygon& poly) {
    std::vector<PlanePoint> probes;
    const auto crossings = proper_crossings(poly);
    const std::size_t n = poly.size();
    auto side_dir = [&](std::size_t s) {
        const Complex d = poly.at_cyclic(static_cast<long>(s) + 1) - poly[s];
        return d / std::abs(d);
    };
    auto side_len = [&](std::size_t s) {
        return std::abs(poly.at_cyclic(static_cast<long>(s) + 1) - poly[s]);
    };
    auto push_if_clear = [&](PlanePoint p) {
        if (clear_of_side_lines(poly, p)) probes.push_back(p);
    };

    for (const auto& c : crossings) {
        const Complex u = side_dir(c.side_a);
        const Complex v = side_dir(c.side_b);
        const double base = std::min(side_len(c.side_a), side_len(c.side_b));
        for (double rel : {1e-3, 1e-5, 1e-2}) {
            const double delta = rel * base;
            for (Complex q : {u + v, u - v, -u + v, -u - v}) {
                push_if_clear(c.point + delta * q / std::abs(q));
            }
        }
    }

    // Midpoints between consecutive crossings along each side, nudged off
    // the side in both normal directions.
    for (std::size_t s = 0; s < n; ++s) {
        const PlanePoint a = poly[s];
        const Complex dir = side_dir(s);
        std::vector<double> params;
        for (const auto& c : crossings) {
            if (c.side_a == s || c.side_b == s) params.push_back(dot(c.point - a, dir));
        }
        if (params.size() < 2) continue;
        std::sort(params.begin(), params.end());
        const Complex normal = dir * Complex(0.0, 1.0);
        for (std::size_t k = 0; k + 1 < params.size(); ++k) {
            const double gap = params[k + 1] - params[k];
            const PlanePoint mid = a + 0.5 * (params[k] + params[k + 1]) * dir;
            for (double rel : {1e-3, 1e-1}) {
                push_if_clear(mid + rel * gap * normal);
                push_if_clear(mid - rel * gap * normal);
            }
        }
    }
    return probes;
}

ImmersionReport check_immersion_necessary(const LabelledPolygon& poly,
                                          std::optional<std::span<const double>> realized_angles) {
    ImmersionReport report;
    const std::size_t n = poly.size();
    const AngleVector geometric = interior_angles(poly);

    std::span<const double> angles = geometric.values;
    bool realized_consistent = true;
    if (realized_angles) {
        if (realized_angles->size() != n) {
            fail(ErrorKind::InvalidArgument, "realized angle count differs from vertex count");
        }
        angles = *realized_angles;
        for (std::size_t j = 0; j < n; ++j) {
            const double diff = std::remainder(angles[j] - geometric.values[j], kTwoPi);
            if (std::abs(diff) > kAngleSumTol) realized_consistent = false;
        }
    }

    report.angles_in_range = realized_consistent && !geometric.has_straight_vertex;
    double sum = 0.0;
    for (double theta : angles) {
        if (!(theta > kStraightAngleTol && theta < kTwoPi - kStraightAngleTol)) {
            report.angles_in_range = false;
        }
    }
    for (double theta : geometric.values) sum += theta;
    report.angle_sum_ok =
        std::abs(sum - static_cast<double>(n - 2) * std::numbers::pi) < kAngleSumTol;

    // Winding at crossing neighbourhoods plus a stratified grid.
    report.winding_nonnegative = true;
    auto check_point = [&](PlanePoint p) {
        if (auto w = try_winding(poly, p); w && *w < 0) report.winding_nonnegative = false;
    };
    for (const auto& p : crossing_probe_points(poly)) check_point(p);

    double lo_x = poly[0].real(), hi_x = lo_x, lo_y = poly[0].imag(), hi_y = lo_y;
    for (const auto& w : poly.vertices()) {
        lo_x = std::min(lo_x, w.real());
        hi_x = std::max(hi_x, w.real());
        lo_y = std::min(lo_y, w.imag());
        hi_y = std::max(hi_y, w.imag());
    }
    constexpr int kGrid = 24;
    SplitMix64 rng(0x1e55ULL);
    for (int gx = 0; gx < kGrid; ++gx) {
        for (int gy = 0; gy < kGrid; ++gy) {
            const double x = lo_x + (hi_x - lo_x) * (gx + rng.uniform()) / kGrid;
            const double y = lo_y + (hi_y - lo_y) * (gy + rng.uniform()) / kGrid;
            const PlanePoint p(x, y);
            if (clear_of_side_lines(poly, p)) check_point(p);
        }
    }
    return report;
}

std::optional<PlanePoint> find_multiwound_witness(const LabelledPolygon& poly, int budget,
                                                  std::uint64_t seed) {
    if (budget <= 0) return std::nullopt;
    int used = 0;
    for (const auto& p : crossing_probe_points(poly)) {
        if (used++ >= budget) return std::nullopt;
        if (auto w = try_winding(poly, p); w && *w >= 2) return p;
    }

    double lo_x = poly[0].real(), hi_x = lo_x, lo_y = poly[0].imag(), hi_y = lo_y;
    for (const auto& w : poly.vertices()) {
        lo_x = std::min(lo_x, w.real());
        hi_x = std::max(hi_x, w.real());
        lo_y = std::min(lo_y, w.imag());
        hi_y = std::max(hi_y, w.imag());
    }
    const int remaining = budget - used;
    if (remaining <= 0) return std::nullopt;
    const int cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(remaining))));
    SplitMix64 rng(seed);
    for (int k = 0; k < remaining; ++k) {
        const int cell = k % (cells * cells);
        const int gx = cell % cells;
        const int gy = cell / cells;
        const double x = lo_x + (hi_x - lo_x) * (gx + rng.uniform()) / cells;
        const double y = lo_y + (hi_y - lo_y) * (gy + rng.uniform()) / cells;
        const PlanePoint p(x, y);
        if (!clear_of_side_lines(poly, p)) continue;
        if (auto w = try_winding(poly, p); w && *w >= 2) return p;
    }
    return std::nullopt;
}

}  // namespace scpoly
