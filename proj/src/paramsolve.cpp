#include "scpoly/paramsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "scpoly/charts.hpp"
#include "scpoly/errors.hpp"
#include "scpoly/quadrature.hpp"
#include "scpoly/scmap.hpp"

namespace scpoly {

namespace {

constexpr double kJacobianStep = 1e-5;
constexpr double kMaxLogStep = 2.0;
// Log-gaps beyond this mean the iterate is drifting to a plateau at infinity.
constexpr double kRunawayLogGap = 40.0;
constexpr int kPolishSteps = 3;
constexpr double kReconstructionTol = 1e-6;

double euclidean_norm(std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

std::vector<double> side_lengths(std::span<const Complex> w, std::size_t count) {
    std::vector<double> t;
    t.reserve(count);
    for (std::size_t j = 0; j < count; ++j) t.push_back(std::abs(w[(j + 1) % w.size()] - w[j]));
    return t;
}

std::size_t sides_used(ResidualForm form, std::size_t n) {
    return form == ResidualForm::centered_log ? n : n - 2;
}

std::vector<double> target_side_lengths(const LabelledPolygon& target, ResidualForm form) {
    return side_lengths(target.vertices(), sides_used(form, target.size()));
}

std::vector<double> candidate_lengths(std::span<const double> gaps, const ExponentVector& alpha,
                                      ResidualForm form, double quadrature_tol) {
    if (form != ResidualForm::centered_log) return candidate_side_lengths(gaps, alpha, quadrature_tol);
    const auto w = map_vertices(SCMap(z_unchart(gaps), alpha), quadrature_tol);
    return side_lengths(w, w.size());
}

std::vector<double> residual_from_lengths(const std::vector<double>& s, const std::vector<double>& t,
                                          ResidualForm form) {
    std::vector<double> r;
    switch (form) {
        case ResidualForm::ratio:
            for (std::size_t j = 1; j < s.size(); ++j) r.push_back(s[j] / s[0] - t[j] / t[0]);
            break;
        case ResidualForm::log_ratio:
            for (std::size_t j = 1; j < s.size(); ++j) {
                r.push_back(std::log(s[j] / s[0]) - std::log(t[j] / t[0]));
            }
            break;
        case ResidualForm::centered_log: {
            std::vector<double> e(s.size());
            for (std::size_t j = 0; j < s.size(); ++j) e[j] = std::log(s[j]) - std::log(t[j]);
            const double mean = std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
            for (double v : e) r.push_back(v - mean);
            break;
        }
    }
    return r;
}

struct Attempt {
    std::vector<double> gaps;
    std::vector<double> history;
    int iterations = 0;
    bool converged = false;
};

class LevenbergMarquardt {
public:
    LevenbergMarquardt(const ExponentVector& alpha, const std::vector<double>& targets,
                       const SolveOptions& opts)
        : alpha_(alpha), targets_(targets), opts_(opts) {}

    Attempt run(std::vector<double> gaps) const {
        Attempt out;
        const auto m = static_cast<Eigen::Index>(gaps.size());
        std::vector<double> r;
        try {
            r = residual(gaps);
        } catch (const Error&) {
            out.gaps = std::move(gaps);
            return out;
        }
        double norm = euclidean_norm(r);
        out.history.push_back(norm);
        double lambda = 1e-3;
        int polished = 0;

        while (out.iterations < opts_.max_iterations) {
            if (norm <= opts_.residual_tol && polished >= kPolishSteps) break;
            const double before = norm;
            if (norm <= opts_.residual_tol) ++polished;
            ++out.iterations;

            const auto rows = static_cast<Eigen::Index>(r.size());
            Eigen::MatrixXd jac(rows, m);
            try {
                for (Eigen::Index k = 0; k < m; ++k) {
                    std::vector<double> plus = gaps, minus = gaps;
                    plus[static_cast<std::size_t>(k)] += kJacobianStep;
                    minus[static_cast<std::size_t>(k)] -= kJacobianStep;
                    const auto rp = residual(plus);
                    const auto rm = residual(minus);
                    for (Eigen::Index i = 0; i < rows; ++i) {
                        jac(i, k) = (rp[static_cast<std::size_t>(i)] - rm[static_cast<std::size_t>(i)]) /
                                    (2.0 * kJacobianStep);
                    }
                }
            } catch (const Error&) {
                break;
            }
            const Eigen::Map<const Eigen::VectorXd> rv(r.data(), rows);
            const Eigen::MatrixXd normal = jac.transpose() * jac;
            const Eigen::VectorXd gradient = jac.transpose() * rv;

            bool accepted = false;
            while (!accepted && lambda < 1e12) {
                Eigen::MatrixXd damped = normal;
                for (Eigen::Index k = 0; k < m; ++k) damped(k, k) += lambda * std::max(normal(k, k), 1e-12);
                const auto factor = damped.ldlt();
                Eigen::VectorXd step = factor.solve(-gradient);
                add_geodesic_acceleration(gaps, rv, jac, factor, step);

                const double largest = step.cwiseAbs().maxCoeff();
                if (!std::isfinite(largest)) {
                    lambda *= 4.0;
                    continue;
                }
                if (largest > kMaxLogStep) step *= kMaxLogStep / largest;

                std::vector<double> trial = gaps;
                for (Eigen::Index k = 0; k < m; ++k) trial[static_cast<std::size_t>(k)] += step[k];
                try {
                    auto r_trial = residual(trial);
                    const double trial_norm = euclidean_norm(r_trial);
                    if (std::isfinite(trial_norm) && trial_norm < norm) {
                        gaps = std::move(trial);
                        r = std::move(r_trial);
                        norm = trial_norm;
                        out.history.push_back(norm);
                        lambda = std::max(lambda / 3.0, 1e-12);
                        accepted = true;
                        continue;
                    }
                } catch (const Error&) {
                    // Trial left the region where the integrals are computable.
                }
                lambda *= 4.0;
            }
            if (!accepted) break;
            if (runaway(gaps)) break;
            // Polishing stops once the residual sits at its noise floor.
            if (before <= opts_.residual_tol && norm > 0.5 * before) break;
        }
        out.converged = norm <= opts_.residual_tol;
        out.gaps = std::move(gaps);
        return out;
    }

private:
    std::vector<double> residual(std::span<const double> gaps) const {
        return residual_from_lengths(candidate_lengths(gaps, alpha_, opts_.residual_form, opts_.quadrature_tol),
                                     targets_, opts_.residual_form);
    }

    static bool runaway(const std::vector<double>& gaps) {
        return std::any_of(gaps.begin(), gaps.end(), [](double g) { return std::abs(g) > kRunawayLogGap; });
    }

    // Second-order correction along the step (Transtrum & Sethna), which lets
    // the iteration follow curved valleys of the residual.
    void add_geodesic_acceleration(const std::vector<double>& gaps, const Eigen::VectorXd& rv,
                                   const Eigen::MatrixXd& jac, const Eigen::LDLT<Eigen::MatrixXd>& factor,
                                   Eigen::VectorXd& step) const {
        constexpr double h = 0.1;
        std::vector<double> probe = gaps;
        for (Eigen::Index k = 0; k < step.size(); ++k) probe[static_cast<std::size_t>(k)] += h * step[k];
        try {
            const auto rp = residual(probe);
            const Eigen::Map<const Eigen::VectorXd> rpv(rp.data(), static_cast<Eigen::Index>(rp.size()));
            const Eigen::VectorXd curvature = (2.0 / h) * ((rpv - rv) / h - jac * step);
            const Eigen::VectorXd accel = factor.solve(-(jac.transpose() * curvature));
            if (accel.allFinite() && 2.0 * accel.norm() <= 0.75 * step.norm()) step += 0.5 * accel;
        } catch (const Error&) {
        }
    }

    const ExponentVector& alpha_;
    const std::vector<double>& targets_;
    const SolveOptions& opts_;
};

}  // namespace

void SolveOptions::validate() const {
    if (max_iterations < 1) fail(ErrorKind::InvalidArgument, "max_iterations must be positive");
    if (!(residual_tol > 0.0) || !(quadrature_tol > 0.0)) {
        fail(ErrorKind::InvalidArgument, "tolerances must be positive");
    }
    if (!(residual_tol > quadrature_tol)) {
        fail(ErrorKind::InvalidArgument, "residual_tol must exceed quadrature_tol");
    }
}

ExponentVector extract_exponents(const LabelledPolygon& poly) {
    const std::size_t n = poly.size();
    const auto angles = interior_angles(poly);
    if (angles.has_straight_vertex) {
        fail(ErrorKind::NotImmersedInput, "an interior angle is 0 or 2*pi");
    }
    const double sum = std::accumulate(angles.values.begin(), angles.values.end(), 0.0);
    if (std::abs(sum - static_cast<double>(n - 2) * std::numbers::pi) > kAngleSumTol) {
        fail(ErrorKind::NotImmersedInput, "interior angles do not sum to (n - 2) * pi");
    }
    std::vector<double> alpha;
    alpha.reserve(n);
    for (double theta : angles.values) alpha.push_back(theta / std::numbers::pi);
    const double defect =
        (static_cast<double>(n - 2) - std::accumulate(alpha.begin(), alpha.end(), 0.0)) / static_cast<double>(n);
    for (double& a : alpha) a += defect;
    for (double a : alpha) {
        if (!(a > 0.0 && a < 2.0)) fail(ErrorKind::NotImmersedInput, "interior angle out of range");
    }
    return ExponentVector(std::move(alpha));
}

std::vector<double> candidate_side_lengths(std::span<const double> gaps, const ExponentVector& alpha,
                                           double quadrature_tol) {
    const SCMap map(z_unchart(gaps), alpha);
    const auto& z = map.prevertices();
    std::vector<double> s;
    s.reserve(z.finite_count() - 1);
    for (std::size_t j = 0; j + 1 < z.finite_count(); ++j) {
        s.push_back(std::abs(integrate_sc(map, Complex(z[j], 0.0), Complex(z[j + 1], 0.0), quadrature_tol)));
    }
    return s;
}

std::vector<double> side_length_residual(std::span<const double> gaps, const ExponentVector& alpha,
                                         const LabelledPolygon& target, ResidualForm form,
                                         double quadrature_tol) {
    const std::size_t n = target.size();
    if (alpha.size() != n) fail(ErrorKind::InvalidArgument, "exponent count differs from vertex count");
    if (gaps.size() != n - 3) fail(ErrorKind::InvalidArgument, "expected n - 3 gap coordinates");
    if (n == 3) return {};
    return residual_from_lengths(candidate_lengths(gaps, alpha, form, quadrature_tol),
                                 target_side_lengths(target, form), form);
}

std::pair<Complex, Complex> fit_affine_constants(std::span<const Complex> bare_vertices,
                                                 const LabelledPolygon& target) {
    if (bare_vertices.size() != target.size()) {
        fail(ErrorKind::InvalidArgument, "vertex counts differ");
    }
    const Complex du = bare_vertices[1] - bare_vertices[0];
    const Complex dt = target[1] - target[0];
    if (du == Complex(0.0, 0.0) || dt == Complex(0.0, 0.0)) {
        fail(ErrorKind::DegenerateSide, "first side is degenerate");
    }
    const Complex a = dt / du;
    return {a, target[0] - a * bare_vertices[0]};
}

SolveResult solve_parameter_problem(const LabelledPolygon& poly, const SolveOptions& opts) {
    opts.validate();
    const std::size_t n = poly.size();
    const ExponentVector alpha = extract_exponents(poly);
    const std::size_t unknowns = n - 3;
    if (opts.initial_gaps && opts.initial_gaps->size() != unknowns) {
        fail(ErrorKind::InvalidArgument, "initial_gaps must have n - 3 entries");
    }

    const auto targets = target_side_lengths(poly, opts.residual_form);
    SolveReport report;
    std::vector<double> gaps(unknowns, 0.0);

    if (unknowns == 0) {
        report.converged = true;
    } else {
        // Starts, in order: the caller's guess (or equal spacing), then gaps
        // proportional to the target side lengths.
        const auto sides = side_lengths(poly.vertices(), n);
        std::vector<std::vector<double>> starts;
        starts.push_back(opts.initial_gaps.value_or(std::vector<double>(unknowns, 0.0)));
        std::vector<double> proportional(unknowns);
        for (std::size_t k = 0; k < unknowns; ++k) proportional[k] = std::log(sides[k + 1] / sides[0]);
        starts.push_back(proportional);

        const LevenbergMarquardt solver(alpha, targets, opts);
        Attempt best;
        double best_norm = std::numeric_limits<double>::infinity();
        for (const auto& start : starts) {
            Attempt attempt = solver.run(start);
            report.iterations += attempt.iterations;
            const double final_norm =
                attempt.history.empty() ? std::numeric_limits<double>::infinity() : attempt.history.back();
            if (final_norm < best_norm || best.history.empty()) {
                best_norm = final_norm;
                best = std::move(attempt);
            }
            if (best.converged) break;
        }
        gaps = best.gaps;
        report.converged = best.converged;
        report.residual_history = std::move(best.history);
    }
    report.final_residual_norm = report.residual_history.empty() ? 0.0 : report.residual_history.back();

    SCMap bare(z_unchart(gaps), alpha);
    const auto u = map_vertices(bare, opts.quadrature_tol);
    const auto [a, b] = fit_affine_constants(u, poly);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(a * u[j] + b - poly[j]));
    report.reconstruction_error = worst / poly.scale();
    report.reconstruction_ok = report.reconstruction_error <= kReconstructionTol;

    return {SCMap(bare.prevertices(), alpha, a, b), std::move(report)};
}

}  // namespace scpoly
