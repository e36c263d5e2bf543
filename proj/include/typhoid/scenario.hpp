#pragma once

#include <string>
#include <vector>

#include "typhoid/integrate.hpp"
#include "typhoid/model.hpp"

namespace typhoid {

/// A fully-specified run: parameters, initial point, solver settings, label.
///
/// Text format (see parse_config): an optional top-level `label = ...` line
/// followed by flat `key = number` lines in the sections [parameters],
/// [initial] and [solver]; `#` starts a comment. Missing keys take the
/// documented baseline defaults.
struct ScenarioConfig {
    Parameters parameters;
    State initial{184.0, 10.0, 0.0, 10.0};
    SolverConfig solver;
    std::string label = "baseline";

    void validate() const;
    bool operator==(const ScenarioConfig&) const = default;
};

/// Parses and validates a scenario document. Unknown keys and sections are
/// rejected; errors carry the offending 1-based line number and, for bound
/// violations, the key name and bound.
ScenarioConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(serialize_config(c)) == c
/// (numbers are written with 17 significant digits).
std::string serialize_config(const ScenarioConfig& cfg);

/// Applies one `--set key=value` override. The key may be bare (`rho`) or
/// section-qualified (`parameters.rho`, `initial.i`, `solver.dt`, `label`).
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

/// One-parameter sweep over explicit values (use make_grid for (start, stop,
/// count) grids). parameter_name must be one of the 13 Parameters keys.
struct SweepSpec {
    std::string parameter_name;
    std::vector<double> values;
    ScenarioConfig base;

    void validate() const;
};

/// Bound-checked assignment of one of the 13 model parameters by key name.
void set_parameter(ScenarioConfig& cfg, const std::string& name, double value);

/// Inclusive linear grid with count >= 2 points.
std::vector<double> make_grid(double start, double stop, int count);

const char* method_name(Method m);

} // namespace typhoid
