#include "typhoid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace typhoid {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_dim(int n) {
    if (n < 2 || n > 4) throw InvalidParameter("matrix dimension must be 2, 3 or 4");
}

// Horner evaluation of the monic polynomial and a running bound on the
// round-off of that evaluation (used as the convergence floor at
// multiple roots, where the update steps stop shrinking).
Complex eval_monic(const std::vector<double>& c, Complex z, double* noise_floor) {
    Complex acc{1.0, 0.0};
    double scale = 1.0;
    const double az = std::abs(z);
    for (double ck : c) {
        acc = acc * z + ck;
        scale = scale * az + std::abs(ck);
    }
    if (noise_floor) *noise_floor = scale * kEps;
    return acc;
}

// Deterministic xorshift for the stall-perturbation restart.
struct SplitMix {
    std::uint64_t x;
    double next_unit() {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

} // namespace

Mat::Mat(int dim) : n(dim) {
    check_dim(dim);
}

Mat Mat::identity(int dim) {
    Mat m(dim);
    for (int k = 0; k < dim; ++k) m(k, k) = 1.0;
    return m;
}

Mat Mat::operator*(const Mat& rhs) const {
    Mat out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += (*this)(r, k) * rhs(k, c);
            out(r, c) = acc;
        }
    return out;
}

double Mat::trace() const {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += (*this)(k, k);
    return acc;
}

double Mat::inf_norm() const {
    double best = 0.0;
    for (int r = 0; r < n; ++r) {
        double row = 0.0;
        for (int c = 0; c < n; ++c) row += std::abs((*this)(r, c));
        best = std::max(best, row);
    }
    return best;
}

std::vector<double> characteristic_polynomial(const Mat& m) {
    check_dim(m.n);
    const int n = m.n;
    std::vector<double> c(n);
    Mat mk = m;
    c[0] = -mk.trace();
    for (int k = 2; k <= n; ++k) {
        Mat shifted = mk;
        for (int d = 0; d < n; ++d) shifted(d, d) += c[k - 2];
        mk = m * shifted;
        c[k - 1] = -mk.trace() / static_cast<double>(k);
    }
    return c;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    if (n == 0) return {};
    if (n == 1) return {Complex{-coeffs[0], 0.0}};

    double cauchy = 0.0;
    for (double ck : coeffs) cauchy = std::max(cauchy, std::abs(ck));
    const double radius = 0.65 * (1.0 + cauchy);

    // Spiral initial guesses; never symmetric about the real axis, which
    // keeps the iteration from stalling on conjugate pairs.
    const Complex seed{0.4, 0.9};
    std::vector<Complex> z(n);
    Complex w = seed;
    for (int k = 0; k < n; ++k) {
        z[k] = radius * w;
        w *= seed;
    }

    SplitMix rng{0x7970686f6964ULL};
    constexpr int kMaxIter = 500;
    for (int it = 1; it <= kMaxIter; ++it) {
        double max_step = 0.0;
        bool all_on_noise_floor = true;
        for (int k = 0; k < n; ++k) {
            Complex denom{1.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                Complex d = z[k] - z[j];
                if (std::abs(d) < 1e-300) d = Complex{1e-12 * (1.0 + std::abs(z[k])), 0.0};
                denom *= d;
            }
            double floor_k = 0.0;
            const Complex pk = eval_monic(coeffs, z[k], &floor_k);
            const Complex step = pk / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step));

            double floor_new = 0.0;
            const Complex p_new = eval_monic(coeffs, z[k], &floor_new);
            if (std::abs(p_new) > 16.0 * n * floor_new) all_on_noise_floor = false;
        }
        double zmax = 1.0;
        for (const Complex& v : z) zmax = std::max(zmax, std::abs(v));
        if (max_step <= 1e-14 * zmax || all_on_noise_floor) return z;

        // Stalled far from convergence: nudge all iterates and keep going.
        if (it % 120 == 0) {
            for (Complex& v : z) {
                v += Complex{(rng.next_unit() - 0.5), (rng.next_unit() - 0.5)} *
                     (1e-6 * (1.0 + std::abs(v)));
            }
        }
    }
    throw NonConvergence("Durand-Kerner root finder did not converge within 500 iterations");
}

std::vector<Eigenvalue> eigenvalues(const Mat& m) {
    const auto coeffs = characteristic_polynomial(m);
    auto roots = polynomial_roots(coeffs);
    std::vector<Eigenvalue> out;
    out.reserve(roots.size());
    for (const Complex& r : roots) out.push_back({r, shifted_determinant_magnitude(m, r)});
    std::sort(out.begin(), out.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
        if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
        return a.value.imag() > b.value.imag();
    });
    return out;
}

std::array<Complex, 2> eigenvalues2(double a, double b, double c, double d) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const Complex disc = std::sqrt(Complex{tr * tr / 4.0 - det, 0.0});
    return {Complex{tr / 2.0, 0.0} + disc, Complex{tr / 2.0, 0.0} - disc};
}

double spectral_abscissa(const std::vector<Eigenvalue>& eigs) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : eigs) best = std::max(best, e.value.real());
    return best;
}

std::array<double, 4> solve_linear(const Mat& m, const std::array<double, 4>& rhs) {
    check_dim(m.n);
    const int n = m.n;
    double lu[4][5];
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) lu[r][c] = m(r, c);
        lu[r][n] = rhs[r];
    }
    const double tiny = 1e-300 + kEps * m.inf_norm();
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(lu[r][col]) > std::abs(lu[pivot][col])) pivot = r;
        if (std::abs(lu[pivot][col]) <= tiny)
            throw SingularMatrix("singular matrix in linear solve");
        if (pivot != col)
            for (int c = 0; c <= n; ++c) std::swap(lu[pivot][c], lu[col][c]);
        for (int r = col + 1; r < n; ++r) {
            const double f = lu[r][col] / lu[col][col];
            for (int c = col; c <= n; ++c) lu[r][c] -= f * lu[col][c];
        }
    }
    std::array<double, 4> x{};
    for (int r = n - 1; r >= 0; --r) {
        double acc = lu[r][n];
        for (int c = r + 1; c < n; ++c) acc -= lu[r][c] * x[c];
        x[r] = acc / lu[r][r];
    }
    return x;
}

double shifted_determinant_magnitude(const Mat& m, Complex shift) {
    check_dim(m.n);
    const int n = m.n;
    Complex w[4][4];
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            w[r][c] = Complex{m(r, c), 0.0} - (r == c ? shift : Complex{0.0, 0.0});
    Complex det{1.0, 0.0};
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(w[r][col]) > std::abs(w[pivot][col])) pivot = r;
        if (std::abs(w[pivot][col]) == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(w[pivot][c], w[col][c]);
            det = -det;
        }
        det *= w[col][col];
        for (int r = col + 1; r < n; ++r) {
            const Complex f = w[r][col] / w[col][col];
            for (int c = col; c < n; ++c) w[r][c] -= f * w[col][c];
        }
    }
    return std::abs(det);
}

} // namespace typhoid
