#include "typhoid/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "typhoid/format.hpp"
#include "typhoid/svg.hpp"

namespace typhoid::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
    if (!out) throw IoError("failed writing output file '" + path + "'");
}

// "runs.csv" -> "runs<suffix>.svg"
std::string svg_path(const std::string& csv_path, const std::string& suffix) {
    std::string stem = csv_path;
    if (stem.size() >= 4 && stem.substr(stem.size() - 4) == ".csv")
        stem.erase(stem.size() - 4);
    return stem + suffix + ".svg";
}

std::string state_tuple(const State& s) {
    return "(" + format17(s.s) + ", " + format17(s.i) + ", " + format17(s.r) + ", " +
           format17(s.b) + ")";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::locally_stable: return "locally_stable";
        case Verdict::unstable: return "unstable";
        default: return "inconclusive";
    }
}

std::vector<double> column(const Trajectory& traj, double State::* member) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& s : traj.states) out.push_back(s.*member);
    return out;
}

void write_timeseries_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,S,I,R,B,N\n";
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const State& s = traj.states[k];
        out << format17(traj.times[k]) << ',' << format17(s.s) << ',' << format17(s.i) << ','
            << format17(s.r) << ',' << format17(s.b) << ',' << format17(total_population(s))
            << '\n';
    }
    if (!out) throw IoError("failed writing output file '" + path + "'");
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::horizon: return "horizon";
        case Termination::steady_state: return "steady_state";
        default: return "step_budget";
    }
}

} // namespace

PeakStats peak_stats(const Trajectory& traj, std::optional<double> threshold) {
    PeakStats st;
    const auto& times = traj.times;
    const auto& states = traj.states;
    size_t peak_at = 0;
    for (size_t k = 0; k < states.size(); ++k) {
        if (states[k].i > st.peak_i) { // strict: first index attaining the max
            st.peak_i = states[k].i;
            peak_at = k;
        }
    }
    st.peak_time = times.empty() ? 0.0 : times[peak_at];
    st.threshold = threshold.value_or(0.1 * st.peak_i);
    for (size_t k = 0; k + 1 < times.size(); ++k) {
        const double above = (states[k].i > st.threshold ? 0.5 : 0.0) +
                             (states[k + 1].i > st.threshold ? 0.5 : 0.0);
        st.time_above += above * (times[k + 1] - times[k]);
    }
    return st;
}

Trajectory cmd_simulate(const ScenarioConfig& cfg, const std::string& out_path, bool svg,
                        std::ostream& diag) {
    cfg.validate();
    const Trajectory traj = integrate(cfg.initial, cfg.parameters, cfg.solver);
    write_timeseries_csv(out_path, traj);
    if (svg) {
        const auto& t = traj.times;
        write_file(svg_path(out_path, "_humans"),
                   render_line_chart("Human compartments: " + cfg.label, "t [weeks]",
                                     "individuals",
                                     {{"S", t, column(traj, &State::s)},
                                      {"I", t, column(traj, &State::i)},
                                      {"R", t, column(traj, &State::r)}}));
        write_file(svg_path(out_path, "_bacteria"),
                   render_line_chart("Environmental bacteria: " + cfg.label, "t [weeks]",
                                     "cells", {{"B", t, column(traj, &State::b)}}));
    }
    const State& last = traj.states.back();
    diag << "simulate '" << cfg.label << "': " << traj.times.size() << " rows -> " << out_path
         << " (terminated by " << termination_name(traj.terminated_by)
         << ", final ||rhs||_inf = " << rhs(last, cfg.parameters).inf_norm() << ")\n";
    return traj;
}

namespace {

ordered_json state_json(const State& s) {
    return {{"s", s.s}, {"i", s.i}, {"r", s.r}, {"b", s.b}};
}

ordered_json mat2_json(const Mat& m) {
    return ordered_json::array({ordered_json::array({m(0, 0), m(0, 1)}),
                                ordered_json::array({m(1, 0), m(1, 1)})});
}

struct AnalyzeData {
    double r0_closed = 0.0, r0_ngm = 0.0;
    State dfe;
    Derivative dfe_residual;
    bool dfe_stationary = false;
    std::optional<StabilityReport> stability;
    std::string stability_note;
    MetzlerDecomposition metzler;
    std::optional<State> endemic;
    std::string endemic_note;
    double ee_rhs_norm = 0.0, ee_identity_residual = 0.0;
    std::optional<R0Sensitivity> sensitivity;
};

AnalyzeData analyze(const ScenarioConfig& cfg) {
    const Parameters& p = cfg.parameters;
    AnalyzeData d;
    d.r0_closed = r0_closed_form(p);
    d.r0_ngm = r0_ngm(p);
    auto [dfe, residual] = disease_free_equilibrium(p);
    d.dfe = dfe;
    d.dfe_residual = residual;
    d.dfe_stationary = residual.inf_norm() <= 1e-9;
    try {
        d.stability = dfe_local_stability(p);
    } catch (const InconsistentModel& e) {
        d.stability_note = e.what();
    }
    d.metzler = metzler_decomposition(p);
    try {
        const State ee = endemic_equilibrium(p);
        d.endemic = ee;
        d.ee_rhs_norm = rhs(ee, p).inf_norm();
        d.ee_identity_residual = p.pi1 - p.pi2 * total_population(ee) - p.pi3 * ee.i;
    } catch (const NoEndemicEquilibrium& e) {
        d.endemic_note = e.what();
    }
    if (p.rho < 1.0) d.sensitivity = r0_sensitivity(p);
    return d;
}

void print_analyze_text(const AnalyzeData& d, const std::string& label, std::ostream& out) {
    out << "label                  = " << label << "\n";
    out << "r0_closed_form         = " << format17(d.r0_closed) << "\n";
    out << "r0_ngm                 = " << format17(d.r0_ngm) << "\n";
    out << "r0_difference          = " << format17(std::abs(d.r0_closed - d.r0_ngm)) << "\n";
    out << "dfe                    = " << state_tuple(d.dfe) << "\n";
    out << "dfe_residual           = (" << format17(d.dfe_residual.ds) << ", "
        << format17(d.dfe_residual.di) << ", " << format17(d.dfe_residual.dr) << ", "
        << format17(d.dfe_residual.db) << ")\n";
    out << "dfe_stationary         = " << (d.dfe_stationary ? "yes" : "no") << "\n";
    if (d.stability) {
        const auto& s = *d.stability;
        for (int k = 0; k < 4; ++k) {
            out << "dfe_eigenvalue_" << k + 1 << "       = " << format17(s.eigenvalues[k].real())
                << (s.eigenvalues[k].imag() < 0 ? " - " : " + ")
                << format17(std::abs(s.eigenvalues[k].imag())) << "i\n";
        }
        out << "spectral_abscissa      = " << format17(s.spectral_abscissa) << "\n";
        out << "dfe_verdict            = " << verdict_name(s.verdict) << "\n";
    } else {
        out << "dfe_stability          = skipped: " << d.stability_note << "\n";
    }
    out << "metzler_a1_eigenvalues = (" << format17(d.metzler.a1_eigenvalues[0]) << ", "
        << format17(d.metzler.a1_eigenvalues[1]) << ")\n";
    out << "metzler_a1_stable      = " << (d.metzler.a1_stable ? "yes" : "no") << "\n";
    out << "metzler_a3_offdiag_ok  = " << (d.metzler.a3_offdiagonal_nonneg ? "yes" : "no")
        << "\n";
    out << "metzler_a3_stable      = " << (d.metzler.a3_stable ? "yes" : "no") << "\n";
    out << "r0_below_one           = " << (d.metzler.r0 < 1.0 ? "yes" : "no") << "\n";
    if (d.endemic) {
        out << "endemic_equilibrium    = " << state_tuple(*d.endemic) << "\n";
        out << "ee_rhs_inf_norm        = " << format17(d.ee_rhs_norm) << "\n";
        out << "ee_identity_residual   = " << format17(d.ee_identity_residual) << "\n";
    } else {
        out << "endemic_equilibrium    = none (" << d.endemic_note << ")\n";
    }
    if (d.sensitivity) {
        const auto& s = *d.sensitivity;
        out << "dr0_drho               = " << format17(s.rho) << "\n";
        out << "dr0_dtheta1            = " << format17(s.theta1) << "\n";
        out << "dr0_dtheta2            = " << format17(s.theta2) << "\n";
        out << "dr0_dcc                = " << format17(s.cc) << "\n";
        out << "dr0_dlambda3           = " << format17(s.lambda3) << "\n";
        out << "dr0_deta2              = " << format17(s.eta2) << "\n";
        out << "dr0_dpi1               = " << format17(s.pi1) << "\n";
        out << "dr0_dpi2               = " << format17(s.pi2) << "\n";
        out << "dr0_dpi3               = " << format17(s.pi3) << "\n";
        out << "dr0_dlambda1           = " << format17(s.lambda1) << "\n";
    } else {
        out << "r0_sensitivity         = skipped (rho = 1: R0 = 0 identically)\n";
    }
}

void print_analyze_json(const AnalyzeData& d, const std::string& label, std::ostream& out) {
    ordered_json j;
    j["label"] = label;
    j["r0"] = {{"closed_form", d.r0_closed},
               {"ngm", d.r0_ngm},
               {"difference", std::abs(d.r0_closed - d.r0_ngm)}};
    j["dfe"] = {{"state", state_json(d.dfe)},
                {"residual",
                 {{"ds", d.dfe_residual.ds},
                  {"di", d.dfe_residual.di},
                  {"dr", d.dfe_residual.dr},
                  {"db", d.dfe_residual.db}}},
                {"stationary", d.dfe_stationary}};
    if (d.stability) {
        const auto& s = *d.stability;
        ordered_json eigs = ordered_json::array();
        for (const auto& e : s.eigenvalues) eigs.push_back({{"re", e.real()}, {"im", e.imag()}});
        j["dfe_stability"] = {{"eigenvalues", eigs},
                              {"spectral_abscissa", s.spectral_abscissa},
                              {"verdict", verdict_name(s.verdict)}};
    } else {
        j["dfe_stability"] = nullptr;
        j["dfe_stability_note"] = d.stability_note;
    }
    j["metzler"] = {{"a1", mat2_json(d.metzler.a1)},
                    {"a2", mat2_json(d.metzler.a2)},
                    {"a3", mat2_json(d.metzler.a3)},
                    {"a1_eigenvalues",
                     ordered_json::array({d.metzler.a1_eigenvalues[0], d.metzler.a1_eigenvalues[1]})},
                    {"a1_stable", d.metzler.a1_stable},
                    {"a3_offdiagonals_nonnegative", d.metzler.a3_offdiagonal_nonneg},
                    {"a3_stable", d.metzler.a3_stable},
                    {"r0_below_one", d.metzler.r0 < 1.0}};
    if (d.endemic) {
        j["endemic_equilibrium"] = {{"state", state_json(*d.endemic)},
                                    {"rhs_inf_norm", d.ee_rhs_norm},
                                    {"recruitment_identity_residual", d.ee_identity_residual}};
    } else {
        j["endemic_equilibrium"] = nullptr;
        j["endemic_equilibrium_note"] = d.endemic_note;
    }
    if (d.sensitivity) {
        const auto& s = *d.sensitivity;
        j["r0_sensitivity"] = {{"rho", s.rho},         {"theta1", s.theta1},
                               {"theta2", s.theta2},   {"cc", s.cc},
                               {"lambda3", s.lambda3}, {"eta2", s.eta2},
                               {"pi1", s.pi1},         {"pi2", s.pi2},
                               {"pi3", s.pi3},         {"lambda1", s.lambda1}};
    } else {
        j["r0_sensitivity"] = nullptr;
    }
    out << j.dump(2) << "\n";
}

} // namespace

void cmd_analyze(const ScenarioConfig& cfg, bool json, std::ostream& out) {
    cfg.validate();
    const AnalyzeData d = analyze(cfg);
    if (json)
        print_analyze_json(d, cfg.label, out);
    else
        print_analyze_text(d, cfg.label, out);
}

CompareOutcome cmd_compare(const ScenarioConfig& a, const ScenarioConfig& b,
                           const std::string& out_path, bool svg,
                           std::optional<double> threshold, std::ostream& out) {
    a.validate();
    b.validate();

    // Shared grid: scenario a's solver, fixed-step, steady-state exit
    // disabled so both trajectories cover the identical grid.
    SolverConfig grid = a.solver;
    if (grid.method != Method::rk4_fixed) {
        out << "note: compare uses the fixed-step method for a shared time grid\n";
        grid.method = Method::rk4_fixed;
    }
    grid.steady_tol = std::numeric_limits<double>::denorm_min();

    const Trajectory ta = integrate(a.initial, a.parameters, grid);
    const Trajectory tb = integrate(b.initial, b.parameters, grid);
    const size_t rows = std::min(ta.times.size(), tb.times.size());

    auto csv = open_out(out_path);
    csv << "t,S_a,I_a,R_a,B_a,N_a,S_b,I_b,R_b,B_b,N_b\n";
    for (size_t k = 0; k < rows; ++k) {
        const State& sa = ta.states[k];
        const State& sb = tb.states[k];
        csv << format17(ta.times[k]) << ',' << format17(sa.s) << ',' << format17(sa.i) << ','
            << format17(sa.r) << ',' << format17(sa.b) << ',' << format17(total_population(sa))
            << ',' << format17(sb.s) << ',' << format17(sb.i) << ',' << format17(sb.r) << ','
            << format17(sb.b) << ',' << format17(total_population(sb)) << '\n';
    }
    if (!csv) throw IoError("failed writing output file '" + out_path + "'");

    if (svg) {
        write_file(svg_path(out_path, ""),
                   render_line_chart("Infectious humans: " + a.label + " vs " + b.label,
                                     "t [weeks]", "I [individuals]",
                                     {{a.label, ta.times, column(ta, &State::i)},
                                      {b.label, tb.times, column(tb, &State::i)}}));
    }

    CompareOutcome outcome{peak_stats(ta, threshold), peak_stats(tb, threshold)};
    const auto report = [&](const char* tag, const ScenarioConfig& cfg, const PeakStats& st) {
        out << "scenario " << tag << " '" << cfg.label << "': peak I = " << format17(st.peak_i)
            << " at t = " << format17(st.peak_time) << " weeks; time above I > "
            << format17(st.threshold) << " = " << format17(st.time_above) << " weeks\n";
    };
    report("a", a, outcome.a);
    report("b", b, outcome.b);
    out << "peak difference (b - a) = " << format17(outcome.b.peak_i - outcome.a.peak_i) << "\n";
    return outcome;
}

void cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& diag) {
    spec.validate();
    auto csv = open_out(out_path);
    csv << spec.parameter_name << ",r0,ee_s,ee_i,ee_r,ee_b,peak_i,error\n";
    for (double value : spec.values) {
        std::string r0_cell, ee_cells = ",,,", peak_cell, error;
        const auto note_error = [&](const std::string& msg) {
            std::string clean = msg;
            std::replace(clean.begin(), clean.end(), ',', ';');
            std::replace(clean.begin(), clean.end(), '\n', ' ');
            error = clean;
        };
        try {
            ScenarioConfig cfg = spec.base;
            set_parameter(cfg, spec.parameter_name, value);
            cfg.validate();
            r0_cell = format17(r0_closed_form(cfg.parameters));
            try {
                const State ee = endemic_equilibrium(cfg.parameters);
                ee_cells = format17(ee.s) + "," + format17(ee.i) + "," + format17(ee.r) + "," +
                           format17(ee.b);
            } catch (const NoEndemicEquilibrium&) {
                // legitimate absence: cells stay blank
            }
            const Trajectory traj = integrate(cfg.initial, cfg.parameters, cfg.solver);
            peak_cell = format17(peak_stats(traj).peak_i);
        } catch (const std::exception& e) {
            note_error(e.what());
        }
        csv << format17(value) << ',' << r0_cell << ',' << ee_cells << ',' << peak_cell << ','
            << error << '\n';
    }
    if (!csv) throw IoError("failed writing output file '" + out_path + "'");
    diag << "sweep over " << spec.parameter_name << ": " << spec.values.size() << " rows -> "
         << out_path << "\n";
}

Trajectory cmd_phase(const ScenarioConfig& cfg, const std::string& out_path, bool svg,
                     std::ostream& diag) {
    cfg.validate();
    const Trajectory traj = integrate(cfg.initial, cfg.parameters, cfg.solver);
    auto csv = open_out(out_path);
    csv << "t,I,B\n";
    for (size_t k = 0; k < traj.times.size(); ++k)
        csv << format17(traj.times[k]) << ',' << format17(traj.states[k].i) << ','
            << format17(traj.states[k].b) << '\n';
    if (!csv) throw IoError("failed writing output file '" + out_path + "'");
    if (svg) {
        write_file(svg_path(out_path, ""),
                   render_line_chart("Phase plane: " + cfg.label, "B [cells]",
                                     "I [individuals]",
                                     {{"I vs B", column(traj, &State::b), column(traj, &State::i)}}));
    }
    diag << "phase '" << cfg.label << "': " << traj.times.size() << " rows -> " << out_path
         << "\n";
    return traj;
}

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> sets;
    double t_end_val = 0.0;
    double dt_val = 0.0;
    std::string method;
    CLI::Option* t_end_opt = nullptr;
    CLI::Option* dt_opt = nullptr;

    std::optional<double> t_end() const {
        return t_end_opt && t_end_opt->count() ? std::optional<double>(t_end_val) : std::nullopt;
    }
    std::optional<double> dt() const {
        return dt_opt && dt_opt->count() ? std::optional<double>(dt_val) : std::nullopt;
    }
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_solver_shortcuts = true) {
    sub->add_option("--config", o.config_path, "scenario file (defaults to the baseline)");
    sub->add_option("--set", o.sets, "override, key=value (repeatable)");
    if (with_solver_shortcuts) {
        o.t_end_opt = sub->add_option("--t-end", o.t_end_val, "horizon, weeks");
        o.dt_opt = sub->add_option("--dt", o.dt_val, "fixed/initial step, weeks");
        sub->add_option("--method", o.method, "rk4 | rk45");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    // unreadable input is a validation failure (exit 1), unlike output I/O
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ScenarioConfig load_scenario(const CommonOpts& o) {
    ScenarioConfig cfg =
        o.config_path.empty() ? ScenarioConfig{} : parse_config(read_file(o.config_path));
    for (const std::string& kv : o.sets) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.t_end()) cfg.solver.t_end = *o.t_end();
    if (o.dt()) cfg.solver.dt = *o.dt();
    if (!o.method.empty()) {
        if (o.method == "rk4" || o.method == "rk4-fixed")
            cfg.solver.method = Method::rk4_fixed;
        else if (o.method == "rk45" || o.method == "rk45-adaptive")
            cfg.solver.method = Method::rk45_adaptive;
        else
            throw ConfigError("--method must be rk4 or rk45 (got '" + o.method + "')");
    }
    cfg.validate();
    return cfg;
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError("cannot parse sweep value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("--values list is empty");
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"typhoid transmission model: simulation and stability analysis"};
    app.require_subcommand(1);

    CommonOpts sim_o, ana_o, cmp_o, swp_o, phs_o;
    std::string sim_out, cmp_out, swp_out, phs_out, ana_out;
    bool sim_svg = false, cmp_svg = false, phs_svg = false, ana_json = false;
    std::string cmp_config_b;
    std::vector<std::string> cmp_sets_b;
    double cmp_threshold_val = 0.0;
    std::string swp_param, swp_values;
    double swp_from = 0.0, swp_to = 0.0;
    int swp_count = 0;

    auto* sim = app.add_subcommand("simulate", "integrate a scenario and write t,S,I,R,B,N CSV");
    add_common(sim, sim_o);
    sim->add_option("--out", sim_out, "output CSV path")->required();
    sim->add_flag("--svg", sim_svg, "also write SVG line charts");

    auto* ana = app.add_subcommand("analyze", "R0, equilibria, stability report");
    add_common(ana, ana_o, false);
    ana->add_flag("--json", ana_json, "machine-readable JSON output");
    ana->add_option("--out", ana_out, "write the report to a file instead of stdout");

    auto* cmp = app.add_subcommand("compare", "run two scenarios on a shared grid");
    add_common(cmp, cmp_o);
    cmp->add_option("--config-b", cmp_config_b, "scenario b file (defaults to the baseline)");
    cmp->add_option("--set-b", cmp_sets_b, "override for scenario b, key=value (repeatable)");
    cmp->add_option("--out", cmp_out, "combined CSV path")->required();
    cmp->add_flag("--svg", cmp_svg, "also write an overlay SVG");
    auto* cmp_threshold_opt = cmp->add_option(
        "--threshold", cmp_threshold_val,
        "absolute I threshold for time-above (default: 10% of each scenario's own peak)");

    auto* swp = app.add_subcommand("sweep", "R0/EE/peak-I over one parameter");
    add_common(swp, swp_o);
    swp->add_option("--param", swp_param, "parameter key to sweep")->required();
    swp->add_option("--values", swp_values, "explicit comma-separated values");
    swp->add_option("--from", swp_from, "grid start");
    swp->add_option("--to", swp_to, "grid stop");
    swp->add_option("--count", swp_count, "grid point count (>= 2)");
    swp->add_option("--out", swp_out, "output CSV path")->required();

    auto* phs = app.add_subcommand("phase", "I-versus-B phase curve");
    add_common(phs, phs_o);
    phs->add_option("--out", phs_out, "output CSV path")->required();
    phs->add_flag("--svg", phs_svg, "also write the phase SVG");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (sim->parsed()) {
            cmd_simulate(load_scenario(sim_o), sim_out, sim_svg, out);
        } else if (ana->parsed()) {
            const ScenarioConfig cfg = load_scenario(ana_o);
            if (ana_out.empty()) {
                cmd_analyze(cfg, ana_json, out);
            } else {
                auto file = open_out(ana_out);
                cmd_analyze(cfg, ana_json, file);
            }
        } else if (cmp->parsed()) {
            const ScenarioConfig a = load_scenario(cmp_o);
            CommonOpts b_opts;
            b_opts.config_path = cmp_config_b;
            b_opts.sets = cmp_sets_b;
            const ScenarioConfig b = load_scenario(b_opts);
            const std::optional<double> threshold =
                cmp_threshold_opt->count() ? std::optional<double>(cmp_threshold_val)
                                           : std::nullopt;
            cmd_compare(a, b, cmp_out, cmp_svg, threshold, out);
        } else if (swp->parsed()) {
            SweepSpec spec;
            spec.base = load_scenario(swp_o);
            spec.parameter_name = swp_param;
            if (!swp_values.empty())
                spec.values = parse_value_list(swp_values);
            else if (swp_count > 0)
                spec.values = make_grid(swp_from, swp_to, swp_count);
            else
                throw ConfigError("sweep needs --values or --from/--to/--count");
            cmd_sweep(spec, swp_out, out);
        } else if (phs->parsed()) {
            cmd_phase(load_scenario(phs_o), phs_out, phs_svg, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace typhoid::cli
