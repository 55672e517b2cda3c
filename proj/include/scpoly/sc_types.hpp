#pragma once

#include <complex>
#include <span>
#include <vector>

namespace scpoly {

using Complex = std::complex<double>;

enum class ExponentMode { standard, extended };

inline constexpr double kExponentSumTol = 1e-12;

/// alpha_1..alpha_n with sum n - 2. Standard mode keeps every alpha in (0, 2);
/// extended mode only requires alpha > 0 and must be requested explicitly.
class ExponentVector {
public:
    explicit ExponentVector(std::vector<double> alphas, ExponentMode mode = ExponentMode::standard);

    std::size_t size() const noexcept { return alphas_.size(); }
    double operator[](std::size_t j) const { return alphas_[j]; }
    std::span<const double> values() const noexcept { return alphas_; }
    ExponentMode mode() const noexcept { return mode_; }

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

private:
    std::vector<double> alphas_;
    ExponentMode mode_;
};

/// Finite prevertices z_1 < ... < z_{n-1} in normalized form z_1 = -1,
/// z_2 = 0; z_n = infinity is implicit.
class Prevertices {
public:
    explicit Prevertices(std::vector<double> finite_points);

    // Vertex count n (one more than the number of finite points).
    std::size_t polygon_size() const noexcept { return points_.size() + 1; }
    std::size_t finite_count() const noexcept { return points_.size(); }
    double operator[](std::size_t j) const { return points_[j]; }
    std::span<const double> values() const noexcept { return points_; }

    friend bool operator==(const Prevertices&, const Prevertices&) = default;

private:
    std::vector<double> points_;
};

/// F(z) = A * integral_{[i,z]} prod_j (zeta - z_j)^(alpha_j - 1) d zeta + B.
class SCMap {
public:
    SCMap(Prevertices prevertices, ExponentVector exponents, Complex a = 1.0, Complex b = 0.0);

    const Prevertices& prevertices() const noexcept { return prevertices_; }
    const ExponentVector& exponents() const noexcept { return exponents_; }
    Complex scale() const noexcept { return a_; }
    Complex offset() const noexcept { return b_; }
    ExponentMode mode() const noexcept { return exponents_.mode(); }
    std::size_t size() const noexcept { return exponents_.size(); }

    friend bool operator==(const SCMap&, const SCMap&) = default;

private:
    Prevertices prevertices_;
    ExponentVector exponents_;
    Complex a_;
    Complex b_;
};

}  // namespace scpoly
