#include "typhoid/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

namespace typhoid {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string format17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_number(const std::string& text, const std::string& key, int line) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("missing value for key '" + key + "'", line);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ConfigError("cannot parse number '" + t + "' for key '" + key + "'", line);
    return v;
}

// Per-key bound checks with the message format the CLI promises
// ("<key> must ..."). Parameters::validate()/cfg.validate() back these up.
void check_bound(const std::string& key, double v, int line) {
    const auto fail = [&](const std::string& what) {
        throw ConfigError(key + " " + what + " (got " + format17(v) + ")", line);
    };
    if (!std::isfinite(v)) fail("must be finite");
    if (key == "rho") {
        if (v < 0.0 || v > 1.0) fail("must lie in [0,1]");
    } else if (key == "pi2" || key == "lambda3" || key == "cc" || key == "dt" ||
               key == "t_end" || key == "rtol" || key == "atol" || key == "steady_tol") {
        if (v <= 0.0) fail("must be positive");
    } else if (key == "max_steps" || key == "record_every") {
        if (v < 1.0 || v != std::floor(v)) fail("must be an integer >= 1");
    } else {
        if (v < 0.0) fail("must be >= 0");
    }
}

using FieldRef = std::function<double*(ScenarioConfig&)>;

const std::map<std::string, FieldRef>& parameter_fields() {
    static const std::map<std::string, FieldRef> m = {
        {"pi1", [](ScenarioConfig& c) { return &c.parameters.pi1; }},
        {"pi2", [](ScenarioConfig& c) { return &c.parameters.pi2; }},
        {"pi3", [](ScenarioConfig& c) { return &c.parameters.pi3; }},
        {"lambda1", [](ScenarioConfig& c) { return &c.parameters.lambda1; }},
        {"lambda2", [](ScenarioConfig& c) { return &c.parameters.lambda2; }},
        {"lambda3", [](ScenarioConfig& c) { return &c.parameters.lambda3; }},
        {"theta1", [](ScenarioConfig& c) { return &c.parameters.theta1; }},
        {"theta2", [](ScenarioConfig& c) { return &c.parameters.theta2; }},
        {"rho", [](ScenarioConfig& c) { return &c.parameters.rho; }},
        {"nu_b", [](ScenarioConfig& c) { return &c.parameters.nu_b; }},
        {"cc", [](ScenarioConfig& c) { return &c.parameters.cc; }},
        {"eta1", [](ScenarioConfig& c) { return &c.parameters.eta1; }},
        {"eta2", [](ScenarioConfig& c) { return &c.parameters.eta2; }},
    };
    return m;
}

const std::map<std::string, FieldRef>& initial_fields() {
    static const std::map<std::string, FieldRef> m = {
        {"s", [](ScenarioConfig& c) { return &c.initial.s; }},
        {"i", [](ScenarioConfig& c) { return &c.initial.i; }},
        {"r", [](ScenarioConfig& c) { return &c.initial.r; }},
        {"b", [](ScenarioConfig& c) { return &c.initial.b; }},
    };
    return m;
}

Method parse_method(const std::string& value, int line) {
    if (value == "rk4" || value == "rk4-fixed") return Method::rk4_fixed;
    if (value == "rk45" || value == "rk45-adaptive") return Method::rk45_adaptive;
    throw ConfigError("method must be one of rk4, rk4-fixed, rk45, rk45-adaptive (got '" +
                          value + "')",
                      line);
}

// Sets cfg.<section>.<key> = value (numbers validated against the bound
// table); returns false when the key does not belong to the section.
bool assign(ScenarioConfig& cfg, const std::string& section, const std::string& key,
            const std::string& value, int line) {
    if (section == "parameters") {
        auto it = parameter_fields().find(key);
        if (it == parameter_fields().end()) return false;
        const double v = parse_number(value, key, line);
        check_bound(key, v, line);
        *it->second(cfg) = v;
        return true;
    }
    if (section == "initial") {
        auto it = initial_fields().find(key);
        if (it == initial_fields().end()) return false;
        const double v = parse_number(value, key, line);
        if (!(std::isfinite(v) && v >= 0.0))
            throw ConfigError("initial " + key + " must be >= 0 (got " + trim(value) + ")", line);
        *it->second(cfg) = v;
        return true;
    }
    if (section == "solver") {
        if (key == "method") {
            cfg.solver.method = parse_method(trim(value), line);
            return true;
        }
        double* slot = nullptr;
        if (key == "dt") slot = &cfg.solver.dt;
        else if (key == "t_end") slot = &cfg.solver.t_end;
        else if (key == "rtol") slot = &cfg.solver.rtol;
        else if (key == "atol") slot = &cfg.solver.atol;
        else if (key == "steady_tol") slot = &cfg.solver.steady_tol;
        if (slot) {
            const double v = parse_number(value, key, line);
            check_bound(key, v, line);
            *slot = v;
            return true;
        }
        if (key == "max_steps" || key == "record_every") {
            const double v = parse_number(value, key, line);
            check_bound(key, v, line);
            (key == "max_steps" ? cfg.solver.max_steps : cfg.solver.record_every) =
                static_cast<std::int64_t>(v);
            return true;
        }
        return false;
    }
    return false;
}

} // namespace

void ScenarioConfig::validate() const {
    parameters.validate();
    solver.validate();
    State check(initial.s, initial.i, initial.r, initial.b); // re-runs the state bounds
    (void)check;
    if (label.empty()) throw InvalidParameter("label must be non-empty");
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section; // empty until the first [section] header
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header '" + line + "'", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "parameters" && section != "initial" && section != "solver")
                throw ConfigError("unknown section [" + section + "]", line_no);
            continue;
        }

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);

        if (section.empty()) {
            if (key == "label") {
                if (value.empty()) throw ConfigError("label must be non-empty", line_no);
                cfg.label = value;
                continue;
            }
            throw ConfigError("key '" + key + "' appears before any section "
                              "(only 'label' is allowed at top level)",
                              line_no);
        }
        if (!assign(cfg, section, key, value, line_no))
            throw ConfigError("unknown key '" + key + "' in [" + section + "]", line_no);
    }
    cfg.validate();
    return cfg;
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "label = " << cfg.label << "\n\n";
    out << "[parameters]\n";
    const auto& p = cfg.parameters;
    out << "pi1 = " << format17(p.pi1) << "\n";
    out << "pi2 = " << format17(p.pi2) << "\n";
    out << "pi3 = " << format17(p.pi3) << "\n";
    out << "lambda1 = " << format17(p.lambda1) << "\n";
    out << "lambda2 = " << format17(p.lambda2) << "\n";
    out << "lambda3 = " << format17(p.lambda3) << "\n";
    out << "theta1 = " << format17(p.theta1) << "\n";
    out << "theta2 = " << format17(p.theta2) << "\n";
    out << "rho = " << format17(p.rho) << "\n";
    out << "nu_b = " << format17(p.nu_b) << "\n";
    out << "cc = " << format17(p.cc) << "\n";
    out << "eta1 = " << format17(p.eta1) << "\n";
    out << "eta2 = " << format17(p.eta2) << "\n";
    out << "\n[initial]\n";
    out << "s = " << format17(cfg.initial.s) << "\n";
    out << "i = " << format17(cfg.initial.i) << "\n";
    out << "r = " << format17(cfg.initial.r) << "\n";
    out << "b = " << format17(cfg.initial.b) << "\n";
    out << "\n[solver]\n";
    out << "method = " << method_name(cfg.solver.method) << "\n";
    out << "dt = " << format17(cfg.solver.dt) << "\n";
    out << "t_end = " << format17(cfg.solver.t_end) << "\n";
    out << "rtol = " << format17(cfg.solver.rtol) << "\n";
    out << "atol = " << format17(cfg.solver.atol) << "\n";
    out << "max_steps = " << cfg.solver.max_steps << "\n";
    out << "steady_tol = " << format17(cfg.solver.steady_tol) << "\n";
    out << "record_every = " << cfg.solver.record_every << "\n";
    return out.str();
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    const std::string k = trim(key);
    const size_t dot = k.find('.');
    if (dot != std::string::npos) {
        const std::string section = k.substr(0, dot);
        const std::string field = k.substr(dot + 1);
        if (!assign(cfg, section, field, value, 0))
            throw ConfigError("unknown key '" + field + "' in [" + section + "]");
        return;
    }
    if (k == "label") {
        if (trim(value).empty()) throw ConfigError("label must be non-empty");
        cfg.label = trim(value);
        return;
    }
    for (const char* section : {"parameters", "initial", "solver"})
        if (assign(cfg, section, k, value, 0)) return;
    throw ConfigError("unknown key '" + k + "'");
}

void SweepSpec::validate() const {
    base.validate();
    if (parameter_fields().find(parameter_name) == parameter_fields().end())
        throw ConfigError("sweep parameter '" + parameter_name +
                          "' is not one of the 13 model parameter keys");
    if (values.empty()) throw ConfigError("sweep needs at least one value");
}

void set_parameter(ScenarioConfig& cfg, const std::string& name, double value) {
    auto it = parameter_fields().find(name);
    if (it == parameter_fields().end())
        throw ConfigError("unknown parameter key '" + name + "'");
    check_bound(name, value, 0);
    *it->second(cfg) = value;
}

std::vector<double> make_grid(double start, double stop, int count) {
    if (count < 2) throw ConfigError("grid count must be >= 2");
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k)
        v[k] = start + (stop - start) * static_cast<double>(k) / (count - 1);
    return v;
}

const char* method_name(Method m) {
    return m == Method::rk4_fixed ? "rk4" : "rk45";
}

} // namespace typhoid
