#pragma once

#include <array>

#include "typhoid/errors.hpp"

namespace typhoid {

/// Model constants. Rates are per week; the equations are unit-agnostic,
/// the week is a documentation convention.
///
/// Defaults are the baseline set used throughout the tests and the CLI.
struct Parameters {
    double pi1 = 0.92;      ///< recruitment rate of humans [ind/week]
    double pi2 = 0.005;     ///< natural human death rate [1/week]
    double pi3 = 0.015;     ///< disease-induced death rate [1/week]
    double lambda1 = 0.048; ///< recovery rate [1/week]
    double lambda2 = 0.1255;///< immunity loss rate of R [1/week]
    double lambda3 = 0.025; ///< bacteria removal rate [1/week]
    double theta1 = 0.95;   ///< contact rate S <-> environment [1/week]
    double theta2 = 0.0021; ///< contact rate S <-> I [1/(week*ind)]
    double rho = 0.07;      ///< information-induced behavior response, in [0,1]
    double nu_b = 0.025;    ///< information-spread saturation coefficient [1/ind]
    double cc = 50000.0;    ///< half-saturation bacterial concentration [cells]
    double eta1 = 0.95;     ///< environmental bacteria recruitment [cells/week]
    double eta2 = 0.95;     ///< bacteria shedding rate by I [cells/week]

    /// Throws InvalidParameter unless all fields are finite and non-negative,
    /// pi2, lambda3, cc are strictly positive, and rho <= 1.
    void validate() const;

    bool operator==(const Parameters&) const = default;
};

/// One point (S, I, R, B) of the 4-dimensional phase space.
/// The checked constructor rejects negative or non-finite components;
/// `unchecked` is for integrator internals, which tolerate round-off
/// undershoot within the solver's assertion tolerance.
struct State {
    double s = 0.0; ///< susceptible humans
    double i = 0.0; ///< infectious humans
    double r = 0.0; ///< recovered humans
    double b = 0.0; ///< environmental bacteria concentration [cells]

    State() = default;
    State(double s, double i, double r, double b);
    static State unchecked(double s, double i, double r, double b) noexcept;

    std::array<double, 4> to_array() const noexcept { return {s, i, r, b}; }
    static State from_array(const std::array<double, 4>& y) noexcept {
        return unchecked(y[0], y[1], y[2], y[3]);
    }

    bool operator==(const State&) const = default;
};

/// Time derivatives of the State components, per week.
struct Derivative {
    double ds = 0.0;
    double di = 0.0;
    double dr = 0.0;
    double db = 0.0;

    std::array<double, 4> to_array() const noexcept { return {ds, di, dr, db}; }
    double inf_norm() const noexcept;
};

/// gamma(B) = B / (B + C): probability-like saturating uptake fraction,
/// strictly increasing in b, in [0, 1).
/// Throws std::domain_error for b < 0 or cc <= 0.
double gamma(double b, double cc);

/// Force of infection
///   chi = theta1*(1-rho)*gamma(B)*S + theta2*(1-rho)*I*S / (1 + nu_b*I).
/// Zero when I = B = 0 and when rho = 1.
double force_of_infection(const State& state, const Parameters& p);

/// N = S + I + R.
double total_population(const State& state);

/// Vector field of the model:
///   dS = pi1 + lambda2*R - chi - pi2*S
///   dI = chi - (lambda1+pi2+pi3)*I
///   dR = lambda1*I - (pi2+lambda2)*R
///   dB = eta1 + eta2*I/N - lambda3*B
/// Throws DegeneratePopulation when N = 0.
Derivative rhs(const State& state, const Parameters& p);

/// (dS+dI+dR) - (pi1 - pi2*N - pi3*I). Identically zero up to round-off:
/// chi cancels between the S and I equations.
double conservation_residual(const State& state, const Parameters& p);

namespace detail {

using Vec4 = std::array<double, 4>;

/// Unvalidated core evaluation on raw components. Tolerates small negative
/// b (round-off undershoot); still rejects N <= 0.
inline Vec4 rhs_raw(const Vec4& y, const Parameters& p) {
    const double s = y[0], i = y[1], r = y[2], b = y[3];
    const double n = s + i + r;
    if (!(n > 0.0))
        throw DegeneratePopulation("total population N = S+I+R is not positive; I/N is undefined");
    const double un_informed = 1.0 - p.rho;
    const double g = b / (b + p.cc);
    const double chi = p.theta1 * un_informed * g * s +
                       p.theta2 * un_informed * i * s / (1.0 + p.nu_b * i);
    const double removal_i = p.lambda1 + p.pi2 + p.pi3;
    return {p.pi1 + p.lambda2 * r - chi - p.pi2 * s,
            chi - removal_i * i,
            p.lambda1 * i - (p.pi2 + p.lambda2) * r,
            p.eta1 + p.eta2 * i / n - p.lambda3 * b};
}

inline double inf_norm(const Vec4& v) noexcept {
    double m = 0.0;
    for (double x : v) {
        const double a = x < 0 ? -x : x;
        if (a > m) m = a;
    }
    return m;
}

} // namespace detail

} // namespace typhoid
