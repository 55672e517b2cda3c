#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "scpoly/sc_types.hpp"

namespace scpoly {

/// Gauss-Jacobi rule for the weight (1 - x)^exponent_right (1 + x)^exponent_left
/// on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing, inside (-1, 1)
    std::vector<double> weights;  // positive
    double exponent_left = 0.0;
    double exponent_right = 0.0;
    int order = 0;
};

/// Rule of the given order for the weight (1 - x)^a (1 + x)^b. Nodes come from
/// the Jacobi matrix eigenvalues, polished by Newton steps on the three-term
/// recurrence in extended precision; weights are Christoffel numbers.
QuadratureRule gauss_jacobi(int order, double a, double b);

/// Same rule through a process-wide cache. Safe for concurrent callers.
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi(int order, double a, double b);

/// Total mass 2^(a+b+1) B(a+1, b+1) of the Jacobi weight.
double jacobi_weight_mass(double a, double b);

struct QuadratureOptions {
    double tol = 1e-10;      // relative, against the integral of |integrand|
    int order = 8;           // Gauss-Jacobi points per panel
    // A panel of length L keeps every foreign singularity at distance >=
    // separation * L. Any value >= 0.5 satisfies the half-distance rule.
    double separation = 1.0;
    int max_level = 10;      // uniform bisection levels before NoConvergence
};

/// prod_k (zeta - s_k)^e_k * exp(log_prefactor), with every power taken on
/// the branch of the logarithm that is real on (0, inf) and cut along the
/// negative imaginary axis. Points on the real axis get arguments of exactly
/// 0 or pi.
struct SingularIntegrand {
    std::vector<Complex> points;
    std::vector<double> exponents;  // each > -1
    Complex log_prefactor{0.0, 0.0};

    Complex evaluate(Complex zeta) const;
};

/// The bare SC integrand prod_{j<n} (zeta - z_j)^(alpha_j - 1) of a map.
SingularIntegrand sc_integrand(const SCMap& map);

/// Logarithm on the closed upper half-plane, real on (0, inf).
Complex sc_log(Complex w);

/// Ordered waypoints of a piecewise-straight integration path.
struct PanelPath {
    std::vector<Complex> waypoints;
};

struct IntegrationResult {
    Complex value;
    double error_estimate = 0.0;  // |difference of the last two levels|
    double abs_integral = 0.0;    // integral of |integrand| |d zeta|
    int levels = 0;
    int panels = 0;               // panels in the accepted level
};

/// Compound Gauss-Jacobi integral along the straight segment [from, to].
/// Endpoints coinciding with a singular point use that point's exponent in
/// the Jacobi weight. Throws PathThroughSingularity if a singular point lies
/// inside the segment and NoConvergence if refinement stalls.
IntegrationResult integrate_segment(const SingularIntegrand& f, Complex from, Complex to,
                                    const QuadratureOptions& opts = {});

/// Sum of integrate_segment over consecutive waypoint pairs.
IntegrationResult integrate_along(const SingularIntegrand& f, const PanelPath& path,
                                  const QuadratureOptions& opts = {});

/// Integral of the bare SC integrand from z_from to z_to (closed upper
/// half-plane). A segment between real endpoints is split at the prevertices
/// it crosses; otherwise the straight segment is used.
Complex integrate_sc(const SCMap& map, Complex z_from, Complex z_to, double tol = 1e-10);
IntegrationResult integrate_sc_detailed(const SCMap& map, Complex z_from, Complex z_to,
                                        const QuadratureOptions& opts);

/// Integral of the bare SC integrand from real z_from > z_{n-1} to infinity,
/// via u = 1/zeta which turns the tail into a Jacobi singularity of
/// exponent alpha_n - 1 at u = 0.
Complex integrate_to_infinity(const SCMap& map, double z_from, double tol = 1e-10);

}  // namespace scpoly
