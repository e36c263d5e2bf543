#pragma once

#include <stdexcept>
#include <string>

namespace typhoid {

/// Rejected parameter, state, or configuration values.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// N = S+I+R = 0: the I/N shedding term is undefined there.
class DegeneratePopulation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Base for failures of a numerical procedure (as opposed to bad inputs).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Trajectory left the finite range (overflow/NaN).
class BlowUp : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A runtime trajectory assertion (positivity or invariant-region bound) failed.
class AssertionBreach : public NumericalError {
public:
    AssertionBreach(const std::string& what, double t, const std::string& component)
        : NumericalError(what), time(t), component(component) {}
    double time;
    std::string component;
};

/// An iterative solver hit its budget without meeting its tolerance.
class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularMatrix : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The disease-free equilibrium is not a stationary point of the model
/// (happens exactly when eta1 > 0, where dB/dt = eta1 at the DFE).
class InconsistentModel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No equilibrium with strictly positive components exists.
class NoEndemicEquilibrium : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario-file parse or validation failure; carries a 1-based line number
/// (0 when the error is not tied to a specific line).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line(line) {}
    int line;
};

} // namespace typhoid
