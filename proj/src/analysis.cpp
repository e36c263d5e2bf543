#include "typhoid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace typhoid {

namespace {

using detail::Vec4;

double removal_rate(const Parameters& p) { return p.lambda1 + p.pi2 + p.pi3; }

} // namespace

std::pair<State, Derivative> disease_free_equilibrium(const Parameters& p) {
    p.validate();
    const State dfe(p.pi1 / p.pi2, 0.0, 0.0, 0.0);
    return {dfe, rhs(dfe, p)};
}

double r0_closed_form(const Parameters& p) {
    p.validate();
    const double numer = (1.0 - p.rho) * (p.cc * p.pi1 * p.lambda3 * p.theta2 +
                                          p.pi2 * p.eta2 * p.theta1);
    const double denom = p.pi2 * removal_rate(p) * p.cc * p.lambda3;
    if (denom == 0.0) throw InvalidParameter("r0_closed_form: zero denominator");
    return numer / denom;
}

NgmPair ngm_matrices(const Parameters& p) {
    p.validate();
    if (p.pi1 == 0.0)
        throw InvalidParameter(
            "ngm_matrices: pi1 must be positive (the transfer entry -eta2*pi2/pi1 is undefined)");
    const double s0 = p.pi1 / p.pi2;
    const double un_informed = 1.0 - p.rho;
    NgmPair ngm;
    ngm.f(0, 0) = p.theta2 * un_informed * s0;
    ngm.f(0, 1) = p.theta1 * un_informed * s0 / p.cc;
    ngm.v(0, 0) = removal_rate(p);
    ngm.v(1, 0) = -p.eta2 * p.pi2 / p.pi1;
    ngm.v(1, 1) = p.lambda3;
    return ngm;
}

double r0_ngm(const Parameters& p) {
    const NgmPair ngm = ngm_matrices(p);
    const double det_v = ngm.v(0, 0) * ngm.v(1, 1);
    if (!(det_v > 0.0)) throw SingularMatrix("r0_ngm: transfer matrix v is singular");
    // v is lower triangular: v^-1 = [[1/v11, 0], [-v21/(v11*v22), 1/v22]].
    Mat v_inv(2);
    v_inv(0, 0) = 1.0 / ngm.v(0, 0);
    v_inv(1, 0) = -ngm.v(1, 0) / det_v;
    v_inv(1, 1) = 1.0 / ngm.v(1, 1);
    const Mat k = ngm.f * v_inv;
    const auto eig = eigenvalues2(k(0, 0), k(0, 1), k(1, 0), k(1, 1));
    return std::max(std::abs(eig[0]), std::abs(eig[1]));
}

Mat jacobian(const State& state, const Parameters& p) {
    p.validate();
    const double n = total_population(state);
    if (!(n > 0.0))
        throw DegeneratePopulation("jacobian: total population N must be positive");

    const double s = state.s, i = state.i, b = state.b;
    const double un_informed = 1.0 - p.rho;
    const double g = b / (b + p.cc);
    const double g_prime = p.cc / ((b + p.cc) * (b + p.cc));
    const double sat = 1.0 + p.nu_b * i;

    const double chi_s = p.theta1 * un_informed * g + p.theta2 * un_informed * i / sat;
    const double chi_i = p.theta2 * un_informed * s / (sat * sat);
    const double chi_b = p.theta1 * un_informed * s * g_prime;

    Mat j(4);
    j(0, 0) = -chi_s - p.pi2;
    j(0, 1) = -chi_i;
    j(0, 2) = p.lambda2;
    j(0, 3) = -chi_b;

    j(1, 0) = chi_s;
    j(1, 1) = chi_i - removal_rate(p);
    j(1, 3) = chi_b;

    j(2, 1) = p.lambda1;
    j(2, 2) = -(p.pi2 + p.lambda2);

    j(3, 0) = -p.eta2 * i / (n * n);
    j(3, 1) = p.eta2 * (n - i) / (n * n);
    j(3, 2) = -p.eta2 * i / (n * n);
    j(3, 3) = -p.lambda3;
    return j;
}

StabilityReport dfe_local_stability(const Parameters& p) {
    auto [dfe, residual] = disease_free_equilibrium(p);
    if (residual.inf_norm() > 1e-9)
        throw InconsistentModel(
            "the disease-free point is not stationary (dB/dt = eta1 = " +
            std::to_string(p.eta1) + " there); set eta1 = 0 for DFE analysis");

    StabilityReport report;
    report.r0_closed = r0_closed_form(p);
    report.r0_ngm = r0_ngm(p);
    report.dfe = dfe;
    report.dfe_residual = residual;

    const auto eigs = eigenvalues(jacobian(dfe, p));
    for (int k = 0; k < 4; ++k) report.eigenvalues[k] = eigs[k].value;
    report.spectral_abscissa = spectral_abscissa(eigs);
    if (report.spectral_abscissa < -1e-8)
        report.verdict = Verdict::locally_stable;
    else if (report.spectral_abscissa > 1e-8)
        report.verdict = Verdict::unstable;
    else
        report.verdict = Verdict::inconclusive;
    return report;
}

MetzlerDecomposition metzler_decomposition(const Parameters& p) {
    p.validate();
    if (p.pi1 == 0.0)
        throw InvalidParameter(
            "metzler_decomposition: pi1 must be positive (a3 has an eta2*pi2/pi1 entry)");
    const double s0 = p.pi1 / p.pi2;
    const double un_informed = 1.0 - p.rho;

    MetzlerDecomposition dec;
    dec.a1(0, 0) = -p.pi2;
    dec.a1(0, 1) = p.lambda2;
    dec.a1(1, 1) = -(p.pi2 + p.lambda2);

    dec.a2(0, 0) = -p.theta2 * un_informed * s0;
    dec.a2(0, 1) = -p.theta1 * un_informed * s0 / p.cc;
    dec.a2(1, 0) = p.lambda1;

    dec.a3(0, 0) = p.theta2 * un_informed * s0 - removal_rate(p);
    dec.a3(0, 1) = p.theta1 * un_informed * s0 / p.cc;
    dec.a3(1, 0) = p.eta2 * p.pi2 / p.pi1;
    dec.a3(1, 1) = -p.lambda3;

    dec.a1_eigenvalues = {-p.pi2, -(p.pi2 + p.lambda2)}; // a1 is upper triangular
    dec.a1_stable = dec.a1_eigenvalues[0] < 0.0 && dec.a1_eigenvalues[1] < 0.0;
    dec.a3_offdiagonal_nonneg = dec.a3(0, 1) >= 0.0 && dec.a3(1, 0) >= 0.0;
    const auto a3_eigs = eigenvalues2(dec.a3(0, 0), dec.a3(0, 1), dec.a3(1, 0), dec.a3(1, 1));
    dec.a3_stable = std::max(a3_eigs[0].real(), a3_eigs[1].real()) < 0.0;
    dec.r0 = r0_closed_form(p);
    return dec;
}

State endemic_equilibrium(const Parameters& p) {
    p.validate();
    const double r0 = r0_closed_form(p);
    if (p.eta1 == 0.0 && r0 <= 1.0)
        throw NoEndemicEquilibrium(
            "no positive equilibrium: eta1 = 0 and R0 = " + std::to_string(r0) + " <= 1");
    if (p.pi1 == 0.0)
        throw NoEndemicEquilibrium("no positive equilibrium: pi1 = 0 drives N* to zero");
    if ((1.0 - p.rho) * (p.theta1 + p.theta2) == 0.0) {
        // chi vanishes identically, so I* = 0 at any stationary point.
        throw NoEndemicEquilibrium(
            "no positive equilibrium: transmission is off (rho = 1 or theta1 = theta2 = 0)");
    }

    // Long-run integration from an interior point supplies the Newton seed.
    const double s0 = p.pi1 / p.pi2;
    const State start(0.9 * s0, 0.1 * s0, 0.0, 0.5 * (p.eta1 + p.eta2) / p.lambda3);
    SolverConfig cfg;
    cfg.method = Method::rk45_adaptive;
    cfg.dt = 0.1;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    cfg.steady_tol = 1e-8;
    cfg.max_steps = 5'000'000;
    Vec4 y = run_to_steady_state(start, p, cfg).state.to_array();

    // Damped Newton on rhs = 0, analytic Jacobian, step halving with
    // rejection of any iterate leaving the positive orthant.
    double fnorm = detail::inf_norm(detail::rhs_raw(y, p));
    for (int iter = 0; iter < 100 && fnorm >= 1e-13; ++iter) {
        const Vec4 f = detail::rhs_raw(y, p);
        const Mat j = jacobian(State::from_array(y), p);
        const Vec4 delta = solve_linear(j, {-f[0], -f[1], -f[2], -f[3]});

        double alpha = 1.0;
        bool moved = false;
        for (int halving = 0; halving < 30; ++halving, alpha *= 0.5) {
            Vec4 trial;
            bool positive = true;
            for (int c = 0; c < 4; ++c) {
                trial[c] = y[c] + alpha * delta[c];
                positive = positive && trial[c] > 0.0;
            }
            if (!positive) continue;
            const double trial_norm = detail::inf_norm(detail::rhs_raw(trial, p));
            if (trial_norm < fnorm) {
                y = trial;
                fnorm = trial_norm;
                moved = true;
                break;
            }
        }
        if (!moved) break; // stalled at the round-off floor
    }
    if (!(fnorm < 1e-10))
        throw NonConvergence("endemic equilibrium Newton iteration stalled at ||rhs||_inf = " +
                             std::to_string(fnorm));

    const double scale = std::max({1.0, y[0], y[1], y[2], y[3]});
    if (std::min({y[0], y[1], y[2], y[3]}) <= 1e-9 * scale)
        throw NoEndemicEquilibrium(
            "the stationary limit point has a zero component (boundary equilibrium)");
    return State(y[0], y[1], y[2], y[3]);
}

double lyapunov_value(const State& state, const State& eq,
                      const std::array<double, 4>& weights) {
    const Vec4 y = state.to_array();
    const Vec4 ystar = eq.to_array();
    double v = 0.0;
    for (int c = 0; c < 4; ++c) {
        if (!(y[c] > 0.0) || !(ystar[c] > 0.0))
            throw std::domain_error("lyapunov_value requires strictly positive components");
        if (!(weights[c] > 0.0)) throw InvalidParameter("lyapunov weights must be positive");
        v += weights[c] * (y[c] - ystar[c] * std::log(y[c]));
    }
    return v;
}

R0Sensitivity r0_sensitivity(const Parameters& p) {
    p.validate();
    if (p.rho == 1.0)
        throw std::domain_error("r0_sensitivity: degenerate at rho = 1 (R0 = 0 there)");
    const double r0 = r0_closed_form(p);
    const double k = removal_rate(p);
    const double un_informed = 1.0 - p.rho;

    R0Sensitivity d;
    d.rho = -r0 / un_informed;
    d.theta1 = un_informed * p.eta2 / (k * p.cc * p.lambda3);
    d.theta2 = un_informed * p.pi1 / (p.pi2 * k);
    d.cc = -un_informed * p.eta2 * p.theta1 / (k * p.cc * p.cc * p.lambda3);
    d.lambda3 = -un_informed * p.eta2 * p.theta1 / (k * p.cc * p.lambda3 * p.lambda3);
    d.eta2 = un_informed * p.theta1 / (k * p.cc * p.lambda3);
    d.pi1 = un_informed * p.theta2 / (p.pi2 * k);
    d.pi2 = -un_informed * (p.pi1 * p.theta2 * (k + p.pi2) / (p.pi2 * p.pi2 * k * k) +
                            p.eta2 * p.theta1 / (k * k * p.cc * p.lambda3));
    d.pi3 = -r0 / k;
    d.lambda1 = -r0 / k;
    return d;
}

} // namespace typhoid
