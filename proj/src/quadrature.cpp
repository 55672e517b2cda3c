#include "scpoly/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "scpoly/errors.hpp"

namespace scpoly {

namespace {

using Real = long double;

// Monic three-term recurrence coefficients of the Jacobi weight
// (1 - x)^a (1 + x)^b: p_{k+1} = (x - diag_k) p_k - offdiag2_k p_{k-1}.
struct Recurrence {
    std::vector<Real> diag;      // alpha_k, k = 0..m-1
    std::vector<Real> offdiag2;  // beta_k,  k = 0..m-1 (beta_0 = total mass)
};

Recurrence jacobi_recurrence(int m, Real a, Real b) {
    Recurrence r;
    r.diag.resize(static_cast<std::size_t>(m));
    r.offdiag2.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const Real s = 2 * k + a + b;
        if (k == 0) {
            r.diag[0] = (b - a) / (a + b + 2);
        } else {
            r.diag[static_cast<std::size_t>(k)] = (b * b - a * a) / (s * (s + 2));
        }
    }
    r.offdiag2[0] = static_cast<Real>(jacobi_weight_mass(static_cast<double>(a), static_cast<double>(b)));
    for (int k = 1; k < m; ++k) {
        const Real s = 2 * k + a + b;
        Real beta;
        if (k == 1) {
            beta = 4 * (1 + a) * (1 + b) / ((2 + a + b) * (2 + a + b) * (3 + a + b));
        } else {
            beta = 4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1));
        }
        r.offdiag2[static_cast<std::size_t>(k)] = beta;
    }
    return r;
}

// Monic p_m and its derivative at x.
std::pair<Real, Real> monic_value_and_derivative(const Recurrence& r, int m, Real x) {
    Real p_prev = 0, p = 1;
    Real d_prev = 0, d = 0;
    for (int k = 0; k < m; ++k) {
        const Real ak = r.diag[static_cast<std::size_t>(k)];
        const Real bk = k == 0 ? 0 : r.offdiag2[static_cast<std::size_t>(k)];
        const Real p_next = (x - ak) * p - bk * p_prev;
        const Real d_next = p + (x - ak) * d - bk * d_prev;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    return {p, d};
}

// Christoffel number 1 / sum_k phat_k(x)^2 with orthonormal phat_k.
Real christoffel_weight(const Recurrence& r, int m, Real x) {
    Real prev = 0;
    Real cur = 1 / std::sqrt(r.offdiag2[0]);
    Real sum = cur * cur;
    for (int k = 0; k + 1 < m; ++k) {
        const Real sk = k == 0 ? 0 : std::sqrt(r.offdiag2[static_cast<std::size_t>(k)]);
        const Real next = ((x - r.diag[static_cast<std::size_t>(k)]) * cur - sk * prev) /
                          std::sqrt(r.offdiag2[static_cast<std::size_t>(k + 1)]);
        prev = cur;
        cur = next;
        sum += cur * cur;
    }
    return 1 / sum;
}

struct RuleKey {
    int order;
    std::uint64_t a_bits;
    std::uint64_t b_bits;
    auto operator<=>(const RuleKey&) const = default;
};

std::uint64_t bits_of(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof u);
    return u;
}

constexpr double kPi = std::numbers::pi;

struct Panel {
    Complex from;
    Complex to;
    int own_left;   // singular point index at `from`, or -1
    int own_right;  // singular point index at `to`, or -1
};

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((p - a).real() * d.real() + (p - a).imag() * d.imag()) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

void partition(const SingularIntegrand& f, const Panel& panel, double separation, int depth,
               std::vector<Panel>& out) {
    const double len = std::abs(panel.to - panel.from);
    for (std::size_t k = 0; k < f.points.size(); ++k) {
        const int ki = static_cast<int>(k);
        if (ki == panel.own_left || ki == panel.own_right) continue;
        const double d = point_segment_distance(f.points[k], panel.from, panel.to);
        if (d == 0.0) {
            fail(ErrorKind::PathThroughSingularity, "integration path passes through a prevertex");
        }
        if (d < separation * len) {
            if (depth > 200) {
                fail(ErrorKind::PathThroughSingularity, "path grazes a prevertex too closely");
            }
            const Complex mid = 0.5 * (panel.from + panel.to);
            partition(f, {panel.from, mid, panel.own_left, -1}, separation, depth + 1, out);
            partition(f, {mid, panel.to, -1, panel.own_right}, separation, depth + 1, out);
            return;
        }
    }
    out.push_back(panel);
}

// One Gauss-Jacobi panel; accumulates the integral of |integrand| too.
Complex panel_integral(const SingularIntegrand& f, const Panel& panel, int order, double& abs_acc) {
    const double e_left = panel.own_left >= 0 ? f.exponents[static_cast<std::size_t>(panel.own_left)] : 0.0;
    const double e_right = panel.own_right >= 0 ? f.exponents[static_cast<std::size_t>(panel.own_right)] : 0.0;
    const auto rule = cached_gauss_jacobi(order, e_right, e_left);

    const Complex half = 0.5 * (panel.to - panel.from);
    const Complex mid = 0.5 * (panel.from + panel.to);
    Complex log_const = f.log_prefactor;
    if (panel.own_left >= 0) log_const += e_left * sc_log(half);
    if (panel.own_right >= 0) log_const += e_right * sc_log(-half);

    Complex sum{0.0, 0.0};
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        const double x = rule->nodes[i];
        const Complex zeta(mid.real() + half.real() * x, mid.imag() + half.imag() * x);
        Complex log_val = log_const;
        for (std::size_t k = 0; k < f.points.size(); ++k) {
            const int ki = static_cast<int>(k);
            if (ki == panel.own_left || ki == panel.own_right) continue;
            log_val += f.exponents[k] * sc_log(zeta - f.points[k]);
        }
        const Complex term = rule->weights[i] * std::exp(log_val);
        sum += term;
        abs_sum += std::abs(term);
    }
    abs_acc += std::abs(half) * abs_sum;
    return half * sum;
}

std::vector<Panel> bisect_uniformly(const std::vector<Panel>& base, int level) {
    if (level == 0) return base;
    const int pieces = 1 << level;
    std::vector<Panel> out;
    out.reserve(base.size() * static_cast<std::size_t>(pieces));
    for (const auto& p : base) {
        const Complex step = (p.to - p.from) / static_cast<double>(pieces);
        for (int j = 0; j < pieces; ++j) {
            const Complex a = j == 0 ? p.from : p.from + static_cast<double>(j) * step;
            const Complex b = j == pieces - 1 ? p.to : p.from + static_cast<double>(j + 1) * step;
            out.push_back({a, b, j == 0 ? p.own_left : -1, j == pieces - 1 ? p.own_right : -1});
        }
    }
    return out;
}

int singular_index_at(const SingularIntegrand& f, Complex z) {
    for (std::size_t k = 0; k < f.points.size(); ++k) {
        if (f.points[k] == z) return static_cast<int>(k);
    }
    return -1;
}

}  // namespace

double jacobi_weight_mass(double a, double b) {
    const Real la = a, lb = b;
    const Real log_mass = (la + lb + 1) * std::log(Real{2}) + std::lgamma(la + 1) +
                          std::lgamma(lb + 1) - std::lgamma(la + lb + 2);
    return static_cast<double>(std::exp(log_mass));
}

QuadratureRule gauss_jacobi(int order, double a, double b) {
    if (order < 1) fail(ErrorKind::InvalidArgument, "quadrature order must be positive");
    if (!(a > -1.0) || !(b > -1.0) || !std::isfinite(a) || !std::isfinite(b)) {
        fail(ErrorKind::InvalidExponent, "Jacobi exponents must exceed -1");
    }
    const int m = order;
    const Recurrence rec = jacobi_recurrence(m, a, b);

    Eigen::VectorXd diag(m);
    Eigen::VectorXd sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) diag[k] = static_cast<double>(rec.diag[static_cast<std::size_t>(k)]);
    for (int k = 1; k < m; ++k) sub[k - 1] = static_cast<double>(std::sqrt(rec.offdiag2[static_cast<std::size_t>(k)]));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    QuadratureRule rule;
    rule.order = m;
    rule.exponent_left = b;
    rule.exponent_right = a;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        Real x = solver.eigenvalues()[i];
        for (int it = 0; it < 4; ++it) {
            const auto [p, dp] = monic_value_and_derivative(rec, m, x);
            if (dp == 0) break;
            const Real step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-19L) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(x);
        rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(christoffel_weight(rec, m, x));
    }
    return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi(int order, double a, double b) {
    static std::shared_mutex mutex;
    static std::map<RuleKey, std::shared_ptr<const QuadratureRule>> cache;
    const RuleKey key{order, bits_of(a), bits_of(b)};
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi(order, a, b));
    std::unique_lock lock(mutex);
    return cache.try_emplace(key, std::move(rule)).first->second;
}

Complex sc_log(Complex w) {
    const double x = w.real();
    const double y = w.imag();
    double arg;
    if (y == 0.0) {
        arg = x > 0.0 ? 0.0 : kPi;
    } else {
        arg = std::atan2(y, x);
        if (arg < -0.5 * kPi) arg += 2.0 * kPi;
    }
    return {std::log(std::hypot(x, y)), arg};
}

Complex SingularIntegrand::evaluate(Complex zeta) const {
    Complex log_val = log_prefactor;
    for (std::size_t k = 0; k < points.size(); ++k) log_val += exponents[k] * sc_log(zeta - points[k]);
    return std::exp(log_val);
}

SingularIntegrand sc_integrand(const SCMap& map) {
    SingularIntegrand f;
    const auto& z = map.prevertices();
    const auto& alpha = map.exponents();
    for (std::size_t j = 0; j < z.finite_count(); ++j) {
        const double e = alpha[j] - 1.0;
        if (e == 0.0) continue;
        f.points.emplace_back(z[j], 0.0);
        f.exponents.push_back(e);
    }
    return f;
}

IntegrationResult integrate_segment(const SingularIntegrand& f, Complex from, Complex to,
                                    const QuadratureOptions& opts) {
    IntegrationResult result;
    if (from == to) return result;
    if (!(opts.tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");

    std::vector<Panel> base;
    partition(f, {from, to, singular_index_at(f, from), singular_index_at(f, to)}, opts.separation, 0,
              base);

    Complex previous{0.0, 0.0};
    for (int level = 0; level <= opts.max_level; ++level) {
        const auto panels = bisect_uniformly(base, level);
        Complex total{0.0, 0.0};
        double abs_total = 0.0;
        for (const auto& p : panels) total += panel_integral(f, p, opts.order, abs_total);
        if (level > 0) {
            const double err = std::abs(total - previous);
            if (err <= opts.tol * abs_total || abs_total == 0.0) {
                result.value = total;
                result.error_estimate = err;
                result.abs_integral = abs_total;
                result.levels = level + 1;
                result.panels = static_cast<int>(panels.size());
                return result;
            }
        }
        previous = total;
    }
    fail(ErrorKind::NoConvergence, "panel refinement did not reach the requested tolerance");
}

IntegrationResult integrate_along(const SingularIntegrand& f, const PanelPath& path,
                                  const QuadratureOptions& opts) {
    IntegrationResult total;
    for (std::size_t k = 0; k + 1 < path.waypoints.size(); ++k) {
        const auto leg = integrate_segment(f, path.waypoints[k], path.waypoints[k + 1], opts);
        total.value += leg.value;
        total.error_estimate += leg.error_estimate;
        total.abs_integral += leg.abs_integral;
        total.levels = std::max(total.levels, leg.levels);
        total.panels += leg.panels;
    }
    return total;
}

namespace {

void require_closed_upper_half_plane(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z.imag() < 0.0) {
        fail(ErrorKind::InvalidArgument, "point must lie in the closed upper half-plane");
    }
}

}  // namespace

IntegrationResult integrate_sc_detailed(const SCMap& map, Complex z_from, Complex z_to,
                                        const QuadratureOptions& opts) {
    require_closed_upper_half_plane(z_from);
    require_closed_upper_half_plane(z_to);
    PanelPath path;
    path.waypoints.push_back(z_from);
    if (z_from.imag() == 0.0 && z_to.imag() == 0.0) {
        const double lo = std::min(z_from.real(), z_to.real());
        const double hi = std::max(z_from.real(), z_to.real());
        std::vector<double> between;
        for (double z : map.prevertices().values()) {
            if (z > lo && z < hi) between.push_back(z);
        }
        if (z_from.real() > z_to.real()) std::reverse(between.begin(), between.end());
        for (double z : between) path.waypoints.emplace_back(z, 0.0);
    }
    path.waypoints.push_back(z_to);
    return integrate_along(sc_integrand(map), path, opts);
}

Complex integrate_sc(const SCMap& map, Complex z_from, Complex z_to, double tol) {
    QuadratureOptions opts;
    opts.tol = tol;
    return integrate_sc_detailed(map, z_from, z_to, opts).value;
}

Complex integrate_to_infinity(const SCMap& map, double z_from, double tol) {
    const auto& z = map.prevertices();
    const auto& alpha = map.exponents();
    const std::size_t last = z.finite_count() - 1;
    if (!std::isfinite(z_from) || !(z_from > z[last])) {
        fail(ErrorKind::InvalidArgument, "tail integration must start right of the last prevertex");
    }
    // zeta = 1/u:  integral_{z_from}^inf f = integral_0^{1/z_from} u^(alpha_n - 1)
    //   prod_k (1 - z_k u)^(alpha_k - 1) du, every factor positive on the range.
    // (1 - z_k u) = -z_k (u - 1/z_k); the phases of both factors cancel.
    SingularIntegrand tail;
    const double e_inf = alpha[alpha.size() - 1] - 1.0;
    if (e_inf != 0.0) {
        tail.points.emplace_back(0.0, 0.0);
        tail.exponents.push_back(e_inf);
    }
    for (std::size_t k = 0; k <= last; ++k) {
        const double e = alpha[k] - 1.0;
        if (z[k] == 0.0 || e == 0.0) continue;
        tail.points.emplace_back(1.0 / z[k], 0.0);
        tail.exponents.push_back(e);
        if (z[k] > 0.0) {
            tail.log_prefactor += e * Complex(std::log(z[k]), -kPi);
        } else {
            tail.log_prefactor += e * std::log(-z[k]);
        }
    }
    QuadratureOptions opts;
    opts.tol = tol;
    const auto r = integrate_segment(tail, Complex(0.0, 0.0), Complex(1.0 / z_from, 0.0), opts);
    return {r.value.real(), 0.0};
}

}  // namespace scpoly
