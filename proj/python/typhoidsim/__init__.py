"""Typhoid-fever transmission model with information effects.

Thin wrapper over the C++ core: compartmental (S, I, R, B) dynamics with a
saturated, information-modulated force of infection, fixed/adaptive
Runge-Kutta integration, reproduction numbers, and equilibrium stability
analysis.
"""

from ._core import (  # noqa: F401
    Derivative,
    InconsistentModelError,
    Method,
    MetzlerDecomposition,
    NoEndemicEquilibriumError,
    NonConvergenceError,
    Parameters,
    R0Sensitivity,
    ScenarioConfig,
    SolverConfig,
    StabilityReport,
    State,
    Termination,
    Trajectory,
    Verdict,
    __version__,
    conservation_residual,
    disease_free_equilibrium,
    dfe_local_stability,
    eigenvalues4,
    endemic_equilibrium,
    force_of_infection,
    gamma,
    integrate,
    jacobian,
    lyapunov_value,
    metzler_decomposition,
    ngm_matrices,
    parse_config,
    r0_closed_form,
    r0_ngm,
    r0_sensitivity,
    rhs,
    run_cli,
    run_to_steady_state,
    serialize_config,
    step_rk4,
    total_population,
)
