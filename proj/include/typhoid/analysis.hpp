#pragma once

#include <array>
#include <utility>

#include "typhoid/integrate.hpp"
#include "typhoid/linalg.hpp"
#include "typhoid/model.hpp"

namespace typhoid {

/// Next-generation matrix blocks at the DFE, infection ordering (I, B):
///   f = [[theta2*(1-rho)*S0, theta1*(1-rho)*S0/cc], [0, 0]]
///   v = [[lambda1+pi2+pi3, 0], [-eta2*pi2/pi1, lambda3]]
/// with S0 = pi1/pi2. v is lower triangular, det v = (lambda1+pi2+pi3)*lambda3.
struct NgmPair {
    Mat f{2};
    Mat v{2};
};

enum class Verdict { locally_stable, unstable, inconclusive };

struct StabilityReport {
    double r0_closed = 0.0;
    double r0_ngm = 0.0;
    State dfe;
    Derivative dfe_residual;
    std::array<Complex, 4> eigenvalues{}; ///< of the Jacobian at the DFE, Re descending
    double spectral_abscissa = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

/// The printed equilibrium (pi1/pi2, 0, 0, 0) together with the vector field
/// evaluated there. The residual is (0,0,0,eta1) up to round-off: the point is
/// stationary only when eta1 = 0.
std::pair<State, Derivative> disease_free_equilibrium(const Parameters& p);

/// R0 = (1-rho) * (cc*pi1*lambda3*theta2 + pi2*eta2*theta1)
///              / (pi2 * (lambda1+pi2+pi3) * cc * lambda3).
double r0_closed_form(const Parameters& p);

/// Throws InvalidParameter when pi1 = 0 (the v(2,1) entry is undefined).
NgmPair ngm_matrices(const Parameters& p);

/// Spectral radius of f * v^-1 (2x2 eigenvalues in closed form).
double r0_ngm(const Parameters& p);

/// Analytic Jacobian of rhs at an arbitrary state (N > 0 required):
/// gamma'(B) = cc/(B+cc)^2, the saturated-incidence I-derivative
/// theta2*(1-rho)*S/(1+nu_b*I)^2, and the N-dependence of eta2*I/N in row 4.
Mat jacobian(const State& state, const Parameters& p);

/// Local stability of the DFE from the spectral abscissa of the Jacobian.
/// Verdict bands: abscissa < -1e-8 stable, > 1e-8 unstable, else inconclusive.
/// Throws InconsistentModel when the DFE residual exceeds 1e-9 (i.e. eta1 > 0).
StabilityReport dfe_local_stability(const Parameters& p);

/// Transmitting/non-transmitting split of the linearization at the DFE:
///   a1 acts on (S - S0, R), a2 couples (I, B) into it, a3 is the
///   transmitting block; a3's off-diagonal entries are non-negative
///   (Metzler structure) and its stability is equivalent to R0 < 1.
struct MetzlerDecomposition {
    Mat a1{2};
    Mat a2{2};
    Mat a3{2};
    std::array<double, 2> a1_eigenvalues{}; ///< exactly {-pi2, -(pi2+lambda2)}
    bool a1_stable = false;
    bool a3_offdiagonal_nonneg = false;
    bool a3_stable = false; ///< both eigenvalues of a3 in the open left half-plane
    double r0 = 0.0;        ///< closed form, for the a3_stable <=> r0 < 1 tie
};

MetzlerDecomposition metzler_decomposition(const Parameters& p);

/// Interior stationary point via long-run integration followed by damped
/// Newton polishing with the analytic Jacobian. The returned state has all
/// components strictly positive and ||rhs||_inf < 1e-10.
/// Throws NoEndemicEquilibrium when only the disease-free/boundary
/// equilibrium exists (eta1 = 0 with R0 <= 1, transmission structurally off,
/// or a zero component at the limit point); NonConvergence on solver failure.
State endemic_equilibrium(const Parameters& p);

/// V = sum_i w_i * (y_i - y*_i * ln y_i); minimized uniquely at state = eq
/// for fixed positive weights. Throws std::domain_error off the positive
/// orthant and InvalidParameter for non-positive weights.
double lyapunov_value(const State& state, const State& eq,
                      const std::array<double, 4>& weights = {1.0, 1.0, 1.0, 1.0});

/// Analytic partial derivatives of the closed-form R0.
/// In particular d/d rho = -R0/(1-rho); throws std::domain_error at rho = 1.
struct R0Sensitivity {
    double rho = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double cc = 0.0;
    double lambda3 = 0.0;
    double eta2 = 0.0;
    double pi1 = 0.0;
    double pi2 = 0.0;
    double pi3 = 0.0;
    double lambda1 = 0.0;
};

R0Sensitivity r0_sensitivity(const Parameters& p);

} // namespace typhoid
