#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "typhoid/analysis.hpp"
#include "typhoid/commands.hpp"
#include "typhoid/integrate.hpp"
#include "typhoid/model.hpp"
#include "typhoid/scenario.hpp"

namespace py = pybind11;
using namespace typhoid;

namespace {

std::vector<std::vector<double>> mat_rows(const Mat& m) {
    std::vector<std::vector<double>> rows(m.n, std::vector<double>(m.n));
    for (int r = 0; r < m.n; ++r)
        for (int c = 0; c < m.n; ++c) rows[r][c] = m(r, c);
    return rows;
}

Mat mat_from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    Mat m(n);
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(rows[r].size()) != n)
            throw InvalidParameter("matrix rows must form a square 2x2..4x4 matrix");
        for (int c = 0; c < n; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Typhoid-fever transmission model with information effects: "
              "simulation, reproduction numbers, and stability analysis";

    py::register_exception<InconsistentModel>(m, "InconsistentModelError", PyExc_RuntimeError);
    py::register_exception<NoEndemicEquilibrium>(m, "NoEndemicEquilibriumError",
                                                 PyExc_RuntimeError);
    py::register_exception<NonConvergence>(m, "NonConvergenceError", PyExc_RuntimeError);

    py::class_<Parameters>(m, "Parameters")
        .def(py::init([](double pi1, double pi2, double pi3, double lambda1, double lambda2,
                         double lambda3, double theta1, double theta2, double rho, double nu_b,
                         double cc, double eta1, double eta2) {
                 Parameters p{pi1, pi2, pi3, lambda1, lambda2, lambda3,
                              theta1, theta2, rho, nu_b, cc, eta1, eta2};
                 p.validate();
                 return p;
             }),
             py::arg("pi1") = 0.92, py::arg("pi2") = 0.005, py::arg("pi3") = 0.015,
             py::arg("lambda1") = 0.048, py::arg("lambda2") = 0.1255,
             py::arg("lambda3") = 0.025, py::arg("theta1") = 0.95, py::arg("theta2") = 0.0021,
             py::arg("rho") = 0.07, py::arg("nu_b") = 0.025, py::arg("cc") = 50000.0,
             py::arg("eta1") = 0.95, py::arg("eta2") = 0.95)
        .def_readwrite("pi1", &Parameters::pi1)
        .def_readwrite("pi2", &Parameters::pi2)
        .def_readwrite("pi3", &Parameters::pi3)
        .def_readwrite("lambda1", &Parameters::lambda1)
        .def_readwrite("lambda2", &Parameters::lambda2)
        .def_readwrite("lambda3", &Parameters::lambda3)
        .def_readwrite("theta1", &Parameters::theta1)
        .def_readwrite("theta2", &Parameters::theta2)
        .def_readwrite("rho", &Parameters::rho)
        .def_readwrite("nu_b", &Parameters::nu_b)
        .def_readwrite("cc", &Parameters::cc)
        .def_readwrite("eta1", &Parameters::eta1)
        .def_readwrite("eta2", &Parameters::eta2)
        .def("validate", &Parameters::validate)
        .def("__repr__", [](const Parameters& p) {
            std::ostringstream s;
            s << "Parameters(pi1=" << p.pi1 << ", pi2=" << p.pi2 << ", pi3=" << p.pi3
              << ", lambda1=" << p.lambda1 << ", lambda2=" << p.lambda2
              << ", lambda3=" << p.lambda3 << ", theta1=" << p.theta1
              << ", theta2=" << p.theta2 << ", rho=" << p.rho << ", nu_b=" << p.nu_b
              << ", cc=" << p.cc << ", eta1=" << p.eta1 << ", eta2=" << p.eta2 << ")";
            return s.str();
        });

    py::class_<State>(m, "State")
        .def(py::init<double, double, double, double>(), py::arg("s"), py::arg("i"),
             py::arg("r"), py::arg("b"))
        .def_readonly("s", &State::s)
        .def_readonly("i", &State::i)
        .def_readonly("r", &State::r)
        .def_readonly("b", &State::b)
        .def("to_tuple",
             [](const State& st) { return py::make_tuple(st.s, st.i, st.r, st.b); })
        .def("__repr__", [](const State& st) {
            std::ostringstream s;
            s << "State(s=" << st.s << ", i=" << st.i << ", r=" << st.r << ", b=" << st.b << ")";
            return s.str();
        });

    py::class_<Derivative>(m, "Derivative")
        .def_readonly("ds", &Derivative::ds)
        .def_readonly("di", &Derivative::di)
        .def_readonly("dr", &Derivative::dr)
        .def_readonly("db", &Derivative::db)
        .def("to_tuple",
             [](const Derivative& d) { return py::make_tuple(d.ds, d.di, d.dr, d.db); })
        .def("inf_norm", &Derivative::inf_norm)
        .def("__repr__", [](const Derivative& d) {
            std::ostringstream s;
            s << "Derivative(ds=" << d.ds << ", di=" << d.di << ", dr=" << d.dr
              << ", db=" << d.db << ")";
            return s.str();
        });

    py::enum_<Method>(m, "Method")
        .value("rk4_fixed", Method::rk4_fixed)
        .value("rk45_adaptive", Method::rk45_adaptive);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init([](Method method, double dt, double t_end, double rtol, double atol,
                         std::int64_t max_steps, double steady_tol, std::int64_t record_every) {
                 SolverConfig c{method, dt, t_end, rtol, atol, max_steps, steady_tol,
                                record_every};
                 c.validate();
                 return c;
             }),
             py::arg("method") = Method::rk4_fixed, py::arg("dt") = 0.01,
             py::arg("t_end") = 200.0, py::arg("rtol") = 1e-8, py::arg("atol") = 1e-9,
             py::arg("max_steps") = 10'000'000, py::arg("steady_tol") = 1e-9,
             py::arg("record_every") = 1)
        .def_readwrite("method", &SolverConfig::method)
        .def_readwrite("dt", &SolverConfig::dt)
        .def_readwrite("t_end", &SolverConfig::t_end)
        .def_readwrite("rtol", &SolverConfig::rtol)
        .def_readwrite("atol", &SolverConfig::atol)
        .def_readwrite("max_steps", &SolverConfig::max_steps)
        .def_readwrite("steady_tol", &SolverConfig::steady_tol)
        .def_readwrite("record_every", &SolverConfig::record_every);

    py::enum_<Termination>(m, "Termination")
        .value("horizon", Termination::horizon)
        .value("steady_state", Termination::steady_state)
        .value("step_budget", Termination::step_budget);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("states", &Trajectory::states)
        .def_readonly("terminated_by", &Trajectory::terminated_by)
        .def_readonly("steps_taken", &Trajectory::steps_taken)
        .def("__len__", [](const Trajectory& t) { return t.times.size(); });

    py::enum_<Verdict>(m, "Verdict")
        .value("locally_stable", Verdict::locally_stable)
        .value("unstable", Verdict::unstable)
        .value("inconclusive", Verdict::inconclusive);

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("r0_closed", &StabilityReport::r0_closed)
        .def_readonly("r0_ngm", &StabilityReport::r0_ngm)
        .def_readonly("dfe", &StabilityReport::dfe)
        .def_readonly("dfe_residual", &StabilityReport::dfe_residual)
        .def_property_readonly("eigenvalues",
                               [](const StabilityReport& r) {
                                   return std::vector<Complex>(r.eigenvalues.begin(),
                                                               r.eigenvalues.end());
                               })
        .def_readonly("spectral_abscissa", &StabilityReport::spectral_abscissa)
        .def_readonly("verdict", &StabilityReport::verdict);

    py::class_<MetzlerDecomposition>(m, "MetzlerDecomposition")
        .def_property_readonly("a1",
                               [](const MetzlerDecomposition& d) { return mat_rows(d.a1); })
        .def_property_readonly("a2",
                               [](const MetzlerDecomposition& d) { return mat_rows(d.a2); })
        .def_property_readonly("a3",
                               [](const MetzlerDecomposition& d) { return mat_rows(d.a3); })
        .def_property_readonly("a1_eigenvalues",
                               [](const MetzlerDecomposition& d) {
                                   return py::make_tuple(d.a1_eigenvalues[0],
                                                         d.a1_eigenvalues[1]);
                               })
        .def_readonly("a1_stable", &MetzlerDecomposition::a1_stable)
        .def_readonly("a3_offdiagonal_nonneg", &MetzlerDecomposition::a3_offdiagonal_nonneg)
        .def_readonly("a3_stable", &MetzlerDecomposition::a3_stable)
        .def_readonly("r0", &MetzlerDecomposition::r0);

    py::class_<R0Sensitivity>(m, "R0Sensitivity")
        .def_readonly("rho", &R0Sensitivity::rho)
        .def_readonly("theta1", &R0Sensitivity::theta1)
        .def_readonly("theta2", &R0Sensitivity::theta2)
        .def_readonly("cc", &R0Sensitivity::cc)
        .def_readonly("lambda3", &R0Sensitivity::lambda3)
        .def_readonly("eta2", &R0Sensitivity::eta2)
        .def_readonly("pi1", &R0Sensitivity::pi1)
        .def_readonly("pi2", &R0Sensitivity::pi2)
        .def_readonly("pi3", &R0Sensitivity::pi3)
        .def_readonly("lambda1", &R0Sensitivity::lambda1)
        .def("as_dict", [](const R0Sensitivity& s) {
            py::dict d;
            d["rho"] = s.rho;
            d["theta1"] = s.theta1;
            d["theta2"] = s.theta2;
            d["cc"] = s.cc;
            d["lambda3"] = s.lambda3;
            d["eta2"] = s.eta2;
            d["pi1"] = s.pi1;
            d["pi2"] = s.pi2;
            d["pi3"] = s.pi3;
            d["lambda1"] = s.lambda1;
            return d;
        });

    m.def("gamma", &typhoid::gamma, py::arg("b"), py::arg("cc"),
          "Saturating uptake fraction B/(B+C)");
    m.def("force_of_infection", &force_of_infection, py::arg("state"), py::arg("parameters"));
    m.def("total_population", &total_population, py::arg("state"));
    m.def("rhs", &rhs, py::arg("state"), py::arg("parameters"));
    m.def("conservation_residual", &conservation_residual, py::arg("state"),
          py::arg("parameters"));

    m.def("step_rk4", &step_rk4, py::arg("state"), py::arg("parameters"), py::arg("dt"));
    m.def("integrate", &integrate, py::arg("state0"), py::arg("parameters"),
          py::arg("config") = SolverConfig{});
    m.def(
        "run_to_steady_state",
        [](const State& s, const Parameters& p, const SolverConfig& c) {
            const SteadyState st = run_to_steady_state(s, p, c);
            return py::make_tuple(st.state, st.elapsed);
        },
        py::arg("state0"), py::arg("parameters"), py::arg("config") = SolverConfig{});

    m.def(
        "disease_free_equilibrium",
        [](const Parameters& p) {
            auto [dfe, residual] = disease_free_equilibrium(p);
            return py::make_tuple(dfe, residual);
        },
        py::arg("parameters"));
    m.def("r0_closed_form", &r0_closed_form, py::arg("parameters"));
    m.def(
        "ngm_matrices",
        [](const Parameters& p) {
            const NgmPair ngm = ngm_matrices(p);
            return py::make_tuple(mat_rows(ngm.f), mat_rows(ngm.v));
        },
        py::arg("parameters"));
    m.def("r0_ngm", &r0_ngm, py::arg("parameters"));
    m.def(
        "jacobian",
        [](const State& s, const Parameters& p) { return mat_rows(jacobian(s, p)); },
        py::arg("state"), py::arg("parameters"));
    m.def(
        "eigenvalues4",
        [](const std::vector<std::vector<double>>& rows) {
            std::vector<py::tuple> out;
            for (const auto& e : eigenvalues(mat_from_rows(rows)))
                out.push_back(py::make_tuple(e.value, e.residual));
            return out;
        },
        py::arg("matrix"), "Eigenvalues (with determinant residuals), Re descending");
    m.def("dfe_local_stability", &dfe_local_stability, py::arg("parameters"));
    m.def("metzler_decomposition", &metzler_decomposition, py::arg("parameters"));
    m.def("endemic_equilibrium", &endemic_equilibrium, py::arg("parameters"));
    m.def("lyapunov_value", &lyapunov_value, py::arg("state"), py::arg("equilibrium"),
          py::arg("weights") = std::array<double, 4>{1.0, 1.0, 1.0, 1.0});
    m.def("r0_sensitivity", &r0_sensitivity, py::arg("parameters"));

    m.def(
        "parse_config", [](const std::string& text) { return parse_config(text); },
        py::arg("text"));
    m.def("serialize_config", &serialize_config, py::arg("config"));

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("parameters", &ScenarioConfig::parameters)
        .def_readwrite("initial", &ScenarioConfig::initial)
        .def_readwrite("solver", &ScenarioConfig::solver)
        .def_readwrite("label", &ScenarioConfig::label)
        .def("validate", &ScenarioConfig::validate);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = typhoid::cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line interface in-process; returns (code, out, err)");

#ifdef TYPHOIDSIM_VERSION
    m.attr("__version__") = TYPHOIDSIM_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
