#pragma once

#include <cstdint>
#include <vector>

#include "typhoid/model.hpp"

namespace typhoid {

enum class Method { rk4_fixed, rk45_adaptive };

struct SolverConfig {
    Method method = Method::rk4_fixed;
    double dt = 0.01;          ///< fixed step (rk4) / initial step (rk45), weeks
    double t_end = 200.0;      ///< horizon, weeks
    double rtol = 1e-8;        ///< adaptive relative tolerance
    double atol = 1e-9;        ///< adaptive absolute tolerance; also the positivity assertion tolerance
    std::int64_t max_steps = 10'000'000;
    double steady_tol = 1e-9;  ///< infinity-norm RHS threshold for steady-state detection
    std::int64_t record_every = 1;

    void validate() const;
    bool operator==(const SolverConfig&) const = default;
};

enum class Termination { horizon, steady_state, step_budget };

struct Trajectory {
    std::vector<double> times;  ///< strictly increasing week stamps
    std::vector<State> states;  ///< matching states
    Termination terminated_by = Termination::horizon;
    std::int64_t steps_taken = 0; ///< accepted steps
};

/// One classical RK4 step. Deterministic; local error O(dt^5). The result is
/// not positivity-checked (integrate() asserts along full trajectories).
State step_rk4(const State& state, const Parameters& p, double dt);

/// Integrates to t_end, steady state (||rhs||_inf < steady_tol), or step
/// budget, recording every `record_every`-th accepted step plus the terminal
/// state. Along the way asserts, at every accepted step:
///   components >= -atol,
///   N(t) <= max(N0, pi1/pi2) * (1 + 1e-9),
///   B(t) <= max(B0, (eta1+eta2)/lambda3) * (1 + 1e-9),
/// throwing AssertionBreach (with time stamp and component) on violation and
/// BlowUp on non-finite states. Budget exhaustion is reported through
/// Trajectory::terminated_by, not an exception.
Trajectory integrate(const State& state0, const Parameters& p, const SolverConfig& cfg);

struct SteadyState {
    State state;
    double elapsed; ///< weeks integrated until the criterion fired
};

/// Runs the flow until ||rhs||_inf < cfg.steady_tol, ignoring cfg.t_end.
/// Throws NonConvergence when the step budget is exhausted first.
SteadyState run_to_steady_state(const State& state0, const Parameters& p,
                                const SolverConfig& cfg);

} // namespace typhoid
