#include "typhoid/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace typhoid {

namespace {

using detail::Vec4;
using detail::rhs_raw;

Vec4 axpy(const Vec4& y, double h, const Vec4& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

Vec4 rk4_step_raw(const Vec4& y, const Parameters& p, double dt, const Vec4& k1) {
    const Vec4 k2 = rhs_raw(axpy(y, dt / 2.0, k1), p);
    const Vec4 k3 = rhs_raw(axpy(y, dt / 2.0, k2), p);
    const Vec4 k4 = rhs_raw(axpy(y, dt, k3), p);
    Vec4 out;
    for (int c = 0; c < 4; ++c)
        out[c] = y[c] + dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    return out;
}

constexpr const char* kComponentNames[4] = {"S", "I", "R", "B"};

struct TrajectoryGuard {
    double neg_tol;
    double n_cap;
    double b_cap;

    TrajectoryGuard(const Vec4& y0, const Parameters& p, double atol) : neg_tol(atol) {
        const double n0 = y0[0] + y0[1] + y0[2];
        n_cap = std::max(n0, p.pi1 / p.pi2) * (1.0 + 1e-9);
        b_cap = std::max(y0[3], (p.eta1 + p.eta2) / p.lambda3) * (1.0 + 1e-9);
    }

    void check(const Vec4& y, double t) const {
        for (int c = 0; c < 4; ++c) {
            if (!std::isfinite(y[c]))
                throw BlowUp("non-finite state (component " + std::string(kComponentNames[c]) +
                             ") at t = " + std::to_string(t));
            if (y[c] < -neg_tol)
                throw AssertionBreach("positivity breached: " + std::string(kComponentNames[c]) +
                                          " = " + std::to_string(y[c]) +
                                          " at t = " + std::to_string(t),
                                      t, kComponentNames[c]);
        }
        const double n = y[0] + y[1] + y[2];
        if (n > n_cap)
            throw AssertionBreach("invariant region breached: N = " + std::to_string(n) +
                                      " > " + std::to_string(n_cap) + " at t = " + std::to_string(t),
                                  t, "N");
        if (y[3] > b_cap)
            throw AssertionBreach("invariant region breached: B = " + std::to_string(y[3]) +
                                      " > " + std::to_string(b_cap) + " at t = " + std::to_string(t),
                                  t, "B");
    }
};

struct Recorder {
    Trajectory traj;
    std::int64_t every;

    void record(double t, const Vec4& y) {
        traj.times.push_back(t);
        traj.states.push_back(State::from_array(y));
    }
    void on_step(std::int64_t accepted, double t, const Vec4& y) {
        if (accepted % every == 0) record(t, y);
    }
    void finish(Termination why, double t, const Vec4& y, std::int64_t accepted) {
        if (traj.times.empty() || traj.times.back() != t) record(t, y);
        traj.terminated_by = why;
        traj.steps_taken = accepted;
    }
};

Trajectory integrate_rk4(const Vec4& y0, const Parameters& p, const SolverConfig& cfg) {
    const std::int64_t horizon_steps = std::llround(cfg.t_end / cfg.dt);
    TrajectoryGuard guard(y0, p, cfg.atol);
    Recorder rec{{}, cfg.record_every};

    Vec4 y = y0;
    double t = 0.0;
    std::int64_t k = 0;
    rec.record(0.0, y);
    while (true) {
        const Vec4 f = rhs_raw(y, p);
        if (detail::inf_norm(f) < cfg.steady_tol) {
            rec.finish(Termination::steady_state, t, y, k);
            return rec.traj;
        }
        if (k >= horizon_steps) {
            rec.finish(Termination::horizon, t, y, k);
            return rec.traj;
        }
        if (k >= cfg.max_steps) {
            rec.finish(Termination::step_budget, t, y, k);
            return rec.traj;
        }
        y = rk4_step_raw(y, p, cfg.dt, f);
        ++k;
        t = static_cast<double>(k) * cfg.dt; // multiplicative stamp: bit-stable, strictly increasing
        guard.check(y, t);
        rec.on_step(k, t, y);
    }
}

// Dormand-Prince 5(4) tableau.
namespace dopri {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
} // namespace dopri

Trajectory integrate_rk45(const Vec4& y0, const Parameters& p, const SolverConfig& cfg) {
    using namespace dopri;
    TrajectoryGuard guard(y0, p, cfg.atol);
    Recorder rec{{}, cfg.record_every};

    Vec4 y = y0;
    double t = 0.0;
    double h = std::min(cfg.dt, cfg.t_end);
    Vec4 k1 = rhs_raw(y, p);
    std::int64_t attempted = 0, accepted = 0;
    rec.record(0.0, y);
    while (true) {
        if (detail::inf_norm(k1) < cfg.steady_tol) {
            rec.finish(Termination::steady_state, t, y, accepted);
            return rec.traj;
        }
        if (t >= cfg.t_end) {
            rec.finish(Termination::horizon, t, y, accepted);
            return rec.traj;
        }
        if (attempted >= cfg.max_steps) {
            rec.finish(Termination::step_budget, t, y, accepted);
            return rec.traj;
        }
        const bool last = t + h >= cfg.t_end;
        if (last) h = cfg.t_end - t;
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw BlowUp("adaptive step size underflow at t = " + std::to_string(t));

        Vec4 w;
        for (int c = 0; c < 4; ++c) w[c] = y[c] + h * a21 * k1[c];
        const Vec4 k2 = rhs_raw(w, p);
        for (int c = 0; c < 4; ++c) w[c] = y[c] + h * (a31 * k1[c] + a32 * k2[c]);
        const Vec4 k3 = rhs_raw(w, p);
        for (int c = 0; c < 4; ++c) w[c] = y[c] + h * (a41 * k1[c] + a42 * k2[c] + a43 * k3[c]);
        const Vec4 k4 = rhs_raw(w, p);
        for (int c = 0; c < 4; ++c)
            w[c] = y[c] + h * (a51 * k1[c] + a52 * k2[c] + a53 * k3[c] + a54 * k4[c]);
        const Vec4 k5 = rhs_raw(w, p);
        for (int c = 0; c < 4; ++c)
            w[c] = y[c] + h * (a61 * k1[c] + a62 * k2[c] + a63 * k3[c] + a64 * k4[c] + a65 * k5[c]);
        const Vec4 k6 = rhs_raw(w, p);
        Vec4 y5;
        for (int c = 0; c < 4; ++c)
            y5[c] = y[c] +
                    h * (a71 * k1[c] + a73 * k3[c] + a74 * k4[c] + a75 * k5[c] + a76 * k6[c]);
        const Vec4 k7 = rhs_raw(y5, p); // FSAL: also the next step's k1

        double err_sq = 0.0;
        for (int c = 0; c < 4; ++c) {
            const double diff = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] +
                                     e6 * k6[c] + e7 * k7[c]);
            const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y[c]), std::abs(y5[c]));
            err_sq += (diff / scale) * (diff / scale);
        }
        const double err = std::sqrt(err_sq / 4.0);
        ++attempted;

        if (!std::isfinite(err)) {
            guard.check(y5, t + h); // classifies the blow-up if y5 is non-finite
            throw BlowUp("non-finite error estimate at t = " + std::to_string(t));
        }
        if (err <= 1.0) {
            t = last ? cfg.t_end : t + h;
            y = y5;
            k1 = k7;
            ++accepted;
            guard.check(y, t);
            rec.on_step(accepted, t, y);
        }
        const double factor =
            err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0; // clamp below
        h *= std::clamp(factor, 0.2, 5.0);
    }
}

} // namespace

void SolverConfig::validate() const {
    if (!(std::isfinite(dt) && dt > 0.0)) throw InvalidParameter("dt must be positive");
    if (!(std::isfinite(t_end) && t_end > 0.0)) throw InvalidParameter("t_end must be positive");
    if (!(std::isfinite(rtol) && rtol > 0.0)) throw InvalidParameter("rtol must be positive");
    if (!(std::isfinite(atol) && atol > 0.0)) throw InvalidParameter("atol must be positive");
    if (max_steps < 1) throw InvalidParameter("max_steps must be >= 1");
    if (!(std::isfinite(steady_tol) && steady_tol > 0.0))
        throw InvalidParameter("steady_tol must be positive");
    if (record_every < 1) throw InvalidParameter("record_every must be >= 1");
}

State step_rk4(const State& state, const Parameters& p, double dt) {
    p.validate();
    if (!(std::isfinite(dt) && dt > 0.0)) throw InvalidParameter("dt must be positive");
    const Vec4 y = state.to_array();
    return State::from_array(rk4_step_raw(y, p, dt, rhs_raw(y, p)));
}

Trajectory integrate(const State& state0, const Parameters& p, const SolverConfig& cfg) {
    p.validate();
    cfg.validate();
    const Vec4 y0 = state0.to_array();
    return cfg.method == Method::rk4_fixed ? integrate_rk4(y0, p, cfg)
                                           : integrate_rk45(y0, p, cfg);
}

SteadyState run_to_steady_state(const State& state0, const Parameters& p,
                                const SolverConfig& cfg) {
    SolverConfig open = cfg;
    open.t_end = 1e12; // horizon effectively removed; the step budget governs
    const Trajectory traj = integrate(state0, p, open);
    if (traj.terminated_by != Termination::steady_state)
        throw NonConvergence("steady state (||rhs||_inf < " + std::to_string(cfg.steady_tol) +
                             ") not reached within " + std::to_string(cfg.max_steps) + " steps");
    return {traj.states.back(), traj.times.back()};
}

} // namespace typhoid
