#pragma once

#include <array>
#include <complex>
#include <vector>

#include "typhoid/errors.hpp"

namespace typhoid {

using Complex = std::complex<double>;

/// Dense real matrix with fixed 4x4 storage and a logical dimension
/// n in {2, 3, 4}; 2x2 is used for the NGM blocks and the Metzler blocks.
struct Mat {
    int n = 4;
    std::array<double, 16> a{}; // row-major, stride 4 regardless of n

    Mat() = default;
    explicit Mat(int dim);

    static Mat identity(int dim);

    double& operator()(int row, int col) { return a[row * 4 + col]; }
    double operator()(int row, int col) const { return a[row * 4 + col]; }

    Mat operator*(const Mat& rhs) const;
    double trace() const;
    double inf_norm() const; // max absolute row sum
};

/// Coefficients of the monic characteristic polynomial
///   p(x) = x^n + c[0] x^(n-1) + ... + c[n-1],
/// by the Faddeev-LeVerrier recurrence.
std::vector<double> characteristic_polynomial(const Mat& m);

/// All roots of the monic polynomial x^n + c[0] x^(n-1) + ... + c[n-1]
/// by Durand-Kerner iteration (500-iteration cap, deterministic
/// perturbation restart on stall). Throws NonConvergence on failure.
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs);

struct Eigenvalue {
    Complex value;
    double residual; ///< |det(m - value*I)|
};

/// Eigenvalues of m via characteristic polynomial + Durand-Kerner,
/// sorted by real part descending; each carries its determinant residual.
std::vector<Eigenvalue> eigenvalues(const Mat& m);

/// Closed-form eigenvalues of [[a, b], [c, d]].
std::array<Complex, 2> eigenvalues2(double a, double b, double c, double d);

/// max Re(lambda) over the given eigenvalues.
double spectral_abscissa(const std::vector<Eigenvalue>& eigs);

/// Solves m x = rhs by partially pivoted LU on the logical n x n block.
/// Throws SingularMatrix when a pivot vanishes.
std::array<double, 4> solve_linear(const Mat& m, const std::array<double, 4>& rhs);

/// |det(m - shift*I)| via complex Gaussian elimination (residual reporting).
double shifted_determinant_magnitude(const Mat& m, Complex shift);

} // namespace typhoid
