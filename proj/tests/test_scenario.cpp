#include <doctest.h>

#include <string>

#include "test_support.hpp"
#include "typhoid/scenario.hpp"

using namespace typhoid;

TEST_CASE("empty sections fall back to the baseline defaults") {
    const ScenarioConfig cfg = parse_config("[parameters]\n[initial]\n[solver]\n");
    CHECK(cfg == ScenarioConfig{});
    CHECK(cfg.parameters.pi1 == 0.92);
    CHECK(cfg.parameters.cc == 50000.0);
    CHECK(cfg.initial.s == 184.0);
    CHECK(cfg.initial.i == 10.0);
    CHECK(cfg.solver.method == Method::rk4_fixed);
    CHECK(cfg.solver.dt == 0.01);
    CHECK(cfg.solver.t_end == 200.0);
    CHECK(cfg.label == "baseline");

    // an entirely empty document is the same thing
    CHECK(parse_config("") == ScenarioConfig{});
}

TEST_CASE("parsing: values, comments, labels") {
    const std::string doc =
        "label = informed scenario\n"
        "\n"
        "[parameters]\n"
        "rho = 0.25      # stronger response\n"
        "theta2 = 1e-3\n"
        "[solver]\n"
        "method = rk45\n"
        "t_end = 50\n"
        "[initial]\n"
        "i = 2.5\n";
    const ScenarioConfig cfg = parse_config(doc);
    CHECK(cfg.label == "informed scenario");
    CHECK(cfg.parameters.rho == 0.25);
    CHECK(cfg.parameters.theta2 == 1e-3);
    CHECK(cfg.parameters.pi1 == 0.92); // untouched default
    CHECK(cfg.solver.method == Method::rk45_adaptive);
    CHECK(cfg.solver.t_end == 50.0);
    CHECK(cfg.initial.i == 2.5);
}

TEST_CASE("parse errors carry line numbers and name the bound") {
    SUBCASE("bound violation") {
        try {
            parse_config("[parameters]\nrho = 1.5\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line == 2);
            CHECK(std::string(e.what()).find("rho must lie in [0,1]") != std::string::npos);
        }
    }
    SUBCASE("unknown key") {
        try {
            parse_config("[parameters]\nfoo = 1\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line == 2);
            CHECK(std::string(e.what()).find("unknown key 'foo'") != std::string::npos);
        }
    }
    SUBCASE("unknown section") {
        CHECK_THROWS_AS(parse_config("[bogus]\n"), ConfigError);
    }
    SUBCASE("malformed line") {
        CHECK_THROWS_AS(parse_config("[solver]\ndt 0.1\n"), ConfigError);
    }
    SUBCASE("unparseable number") {
        CHECK_THROWS_AS(parse_config("[solver]\ndt = fast\n"), ConfigError);
    }
    SUBCASE("key before any section") {
        CHECK_THROWS_AS(parse_config("dt = 0.1\n"), ConfigError);
    }
    SUBCASE("positivity bounds") {
        CHECK_THROWS_AS(parse_config("[parameters]\npi2 = 0\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[solver]\ndt = -1\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[solver]\nrecord_every = 0\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[initial]\ns = -5\n"), ConfigError);
    }
}

TEST_CASE("serialize/parse round-trip on randomized configs") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 50; ++k) {
        ScenarioConfig cfg;
        cfg.parameters = test_support::random_parameters(rng);
        cfg.initial = test_support::random_state(rng);
        cfg.solver.method = (k % 2 == 0) ? Method::rk4_fixed : Method::rk45_adaptive;
        cfg.solver.dt = test_support::log_uniform(rng, 1e-4, 1.0);
        cfg.solver.t_end = test_support::log_uniform(rng, 1.0, 1e4);
        cfg.solver.rtol = test_support::log_uniform(rng, 1e-12, 1e-4);
        cfg.solver.atol = test_support::log_uniform(rng, 1e-14, 1e-6);
        cfg.solver.max_steps = 1 + static_cast<std::int64_t>(
                                       test_support::log_uniform(rng, 1.0, 1e9));
        cfg.solver.steady_tol = test_support::log_uniform(rng, 1e-14, 1e-3);
        cfg.solver.record_every = 1 + (k % 7);
        cfg.label = "scenario " + std::to_string(k);

        const ScenarioConfig reparsed = parse_config(serialize_config(cfg));
        CHECK(reparsed == cfg);
    }
}

TEST_CASE("overrides") {
    ScenarioConfig cfg;
    apply_override(cfg, "rho", "0");
    CHECK(cfg.parameters.rho == 0.0);
    apply_override(cfg, "parameters.nu_b", "0");
    CHECK(cfg.parameters.nu_b == 0.0);
    apply_override(cfg, "initial.i", "25");
    CHECK(cfg.initial.i == 25.0);
    apply_override(cfg, "dt", "0.5");
    CHECK(cfg.solver.dt == 0.5);
    apply_override(cfg, "method", "rk45-adaptive");
    CHECK(cfg.solver.method == Method::rk45_adaptive);
    apply_override(cfg, "label", "tweaked");
    CHECK(cfg.label == "tweaked");

    CHECK_THROWS_AS(apply_override(cfg, "nope", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "rho", "2"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "solver.rho", "0.5"), ConfigError);
}

TEST_CASE("sweep helpers") {
    CHECK(make_grid(0.0, 1.0, 5) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 1), ConfigError);

    ScenarioConfig cfg;
    set_parameter(cfg, "theta2", 0.01);
    CHECK(cfg.parameters.theta2 == 0.01);
    CHECK_THROWS_AS(set_parameter(cfg, "rho", 3.0), ConfigError);
    CHECK_THROWS_AS(set_parameter(cfg, "zeta", 1.0), ConfigError);

    SweepSpec spec;
    spec.parameter_name = "sigma";
    spec.values = {1.0};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}
