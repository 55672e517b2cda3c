#include "scpoly/charts.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "scpoly/errors.hpp"

namespace scpoly {

namespace {

double barycenter_value(std::size_t n) {
    return static_cast<double>(n - 2) / static_cast<double>(n);
}

// Sets the last entry so that the left-to-right sum is exactly n - 2.
void close_exponent_sum(std::vector<double>& alpha) {
    const double target = static_cast<double>(alpha.size() - 2);
    const double head = std::accumulate(alpha.begin(), alpha.end() - 1, 0.0);
    double& last = alpha.back();
    last = target - head;
    for (int guard = 0; guard < 8; ++guard) {
        const double sum = head + last;
        if (sum == target) return;
        last = std::nextafter(last, sum < target ? std::numeric_limits<double>::infinity()
                                                 : -std::numeric_limits<double>::infinity());
    }
}

bool strictly_inside(const std::vector<double>& alpha) {
    for (double a : alpha) {
        if (!(a > 0.0 && a < 2.0)) return false;
    }
    return true;
}

}  // namespace

void ChartPoint::validate() const {
    if (n < 3) fail(ErrorKind::InvalidArgument, "chart point needs n >= 3");
    if (z.size() != static_cast<std::size_t>(n - 3) || a.size() != static_cast<std::size_t>(n - 1)) {
        fail(ErrorKind::InvalidArgument, "chart point has the wrong dimension for n");
    }
    for (double v : z) {
        if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "chart coordinate is not finite");
    }
    for (double v : a) {
        if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "chart coordinate is not finite");
    }
}

std::vector<double> z_chart(const Prevertices& z) {
    std::vector<double> out;
    out.reserve(z.finite_count() - 2);
    for (std::size_t k = 2; k < z.finite_count(); ++k) out.push_back(std::log(z[k] - z[k - 1]));
    return out;
}

Prevertices z_unchart(std::span<const double> coords) {
    std::vector<double> z{-1.0, 0.0};
    z.reserve(coords.size() + 2);
    for (double c : coords) {
        if (!std::isfinite(c)) fail(ErrorKind::InvalidArgument, "chart coordinate is not finite");
        z.push_back(z.back() + std::exp(c));
    }
    return Prevertices(std::move(z));
}

std::vector<std::vector<double>> exponent_direction_basis(std::size_t n) {
    std::vector<std::vector<double>> basis;
    basis.reserve(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double norm = std::sqrt(kd * (kd + 1.0));
        std::vector<double> row(n, 0.0);
        for (std::size_t j = 0; j < k; ++j) row[j] = 1.0 / norm;
        row[k] = -kd / norm;
        basis.push_back(std::move(row));
    }
    return basis;
}

double boundary_distance(std::span<const double> direction) {
    const double c = barycenter_value(direction.size());
    double rho = std::numeric_limits<double>::infinity();
    for (double u : direction) {
        if (u > 0.0) rho = std::min(rho, (2.0 - c) / u);
        if (u < 0.0) rho = std::min(rho, c / -u);
    }
    return rho;
}

std::vector<double> a_chart(const ExponentVector& alpha) {
    const std::size_t n = alpha.size();
    for (double a : alpha.values()) {
        if (!(a > 0.0 && a < 2.0)) fail(ErrorKind::OnBoundary, "exponent outside the open interval (0, 2)");
    }
    const double c = barycenter_value(n);
    const auto basis = exponent_direction_basis(n);
    std::vector<double> w(n - 1, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) w[k] += basis[k][j] * (alpha[j] - c);
    }
    const double r = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (r == 0.0) return w;

    std::vector<double> u(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) u[j] += basis[k][j] * (w[k] / r);
    }
    const double rho = boundary_distance(u);
    if (!(r < rho)) fail(ErrorKind::OnBoundary, "exponents lie on the polytope boundary");
    const double s = r / (rho - r);
    for (double& v : w) v *= s / r;
    return w;
}

ExponentVector a_unchart(std::span<const double> coords) {
    const std::size_t n = coords.size() + 1;
    if (n < 3) fail(ErrorKind::InvalidArgument, "need at least 2 exponent coordinates");
    for (double v : coords) {
        if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "chart coordinate is not finite");
    }
    const double c = barycenter_value(n);
    std::vector<double> alpha(n, c);
    const double s = std::sqrt(std::inner_product(coords.begin(), coords.end(), coords.begin(), 0.0));
    if (s > 0.0) {
        const auto basis = exponent_direction_basis(n);
        std::vector<double> u(n, 0.0);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) u[j] += basis[k][j] * (coords[k] / s);
        }
        const double rho = boundary_distance(u);
        double t = s / (1.0 + s);
        for (int guard = 0; guard < 64; ++guard) {
            const double r = rho * t;
            for (std::size_t j = 0; j < n; ++j) alpha[j] = c + r * u[j];
            close_exponent_sum(alpha);
            if (strictly_inside(alpha)) break;
            // Only reachable when s / (1 + s) rounds to within an ulp of 1.
            t = 1.0 - 2.0 * (1.0 - t) - std::numeric_limits<double>::epsilon();
        }
    } else {
        close_exponent_sum(alpha);
    }
    return ExponentVector(std::move(alpha));
}

ChartPoint moduli_chart(const SCMap& map) {
    ChartPoint pt;
    pt.n = static_cast<int>(map.size());
    pt.z = z_chart(map.prevertices());
    pt.a = a_chart(map.exponents());
    return pt;
}

std::pair<Prevertices, ExponentVector> moduli_unchart(const ChartPoint& pt) {
    pt.validate();
    return {z_unchart(pt.z), a_unchart(pt.a)};
}

}  // namespace scpoly
