#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scpoly/geometry.hpp"
#include "scpoly/sc_types.hpp"

namespace scpoly {

/// How side_length_residual compares candidate and target side ratios.
enum class ResidualForm {
    ratio,      // s_j / s_1 - t_j / t_1
    log_ratio,  // log(s_j / s_1) - log(t_j / t_1)
    // e_j - mean(e) with e_j = log(s_j / t_j) over all n sides. Stays well
    // conditioned when w_n or w_{n-1} is nearly a straight vertex.
    centered_log,
};

struct SolveOptions {
    int max_iterations = 200;
    double residual_tol = 1e-10;
    double quadrature_tol = 1e-11;
    std::optional<std::vector<double>> initial_gaps;  // n - 3 log-gaps
    ResidualForm residual_form = ResidualForm::centered_log;

    // Throws InvalidArgument on non-positive tolerances, residual_tol <=
    // quadrature_tol, or max_iterations < 1.
    void validate() const;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;  // summed over all starting points tried
    double final_residual_norm = 0.0;
    std::vector<double> residual_history;  // one entry per accepted step, plus the start
    // max_j |A u_j + B - w_j| / scale for the returned map.
    double reconstruction_error = 0.0;
    bool reconstruction_ok = false;
};

struct SolveResult {
    SCMap map;
    SolveReport report;
};

/// alpha_j = theta_j / pi, with the defect of sum alpha = n - 2 spread
/// equally. Throws NotImmersedInput if an angle is not strictly inside
/// (0, 2*pi) or the angle sum is off.
ExponentVector extract_exponents(const LabelledPolygon& poly);

/// Side lengths |integral over (z_j, z_{j+1})| for j = 1..n-2 of the normalized
/// map with prevertex log-gaps `gaps`.
std::vector<double> candidate_side_lengths(std::span<const double> gaps, const ExponentVector& alpha,
                                           double quadrature_tol);

/// Equations of the parameter problem. The ratio forms give n - 3 equations,
/// side j (j = 2..n-2) relative to side 1, leaving out the sides touching w_n
/// since closure determines them; centered_log gives n, one per side.
std::vector<double> side_length_residual(std::span<const double> gaps, const ExponentVector& alpha,
                                         const LabelledPolygon& target,
                                         ResidualForm form = ResidualForm::ratio,
                                         double quadrature_tol = 1e-11);

/// A = (t_2 - t_1) / (u_2 - u_1), B = t_1 - A u_1.
std::pair<Complex, Complex> fit_affine_constants(std::span<const Complex> bare_vertices,
                                                 const LabelledPolygon& target);

/// Psi: normalized prevertices, exponents and constants A, B of the SC map
/// whose boundary is `poly`. Levenberg-Marquardt with geodesic acceleration on
/// the log-gap unknowns, started from initial_gaps (or equal gaps) and then,
/// if that fails, from gaps proportional to the target sides.
/// Non-convergence is reported, not thrown.
SolveResult solve_parameter_problem(const LabelledPolygon& poly, const SolveOptions& opts = {});

}  // namespace scpoly
