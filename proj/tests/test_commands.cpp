#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "typhoid/commands.hpp"
#include "typhoid/format.hpp"

using namespace typhoid;
using typhoid::cli::run;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("cmdtest_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<double>> csv_rows(const std::string& text, size_t expect_cols) {
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line)); // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(cell.empty() ? std::nan("") : std::strtod(cell.c_str(), nullptr));
        }
        // allow short rows for blank trailing cells
        while (row.size() < expect_cols) row.push_back(std::nan(""));
        rows.push_back(std::move(row));
    }
    return rows;
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

// "key   = value" lines -> map, for the analyze text block
std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(' '));
            s.erase(s.find_last_not_of(' ') + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

} // namespace

TEST_CASE("simulate: baseline CSV rises then falls, settles by the long horizon") {
    TempFile csv("sim_baseline.csv");
    std::string out;
    const int code = run_cli({"simulate", "--out", csv.path, "--t-end", "1300"}, &out);
    REQUIRE(code == 0);

    const std::string text = slurp(csv.path);
    CHECK(text.substr(0, 13) == "t,S,I,R,B,N\n0" );
    const auto rows = csv_rows(text, 6);
    REQUIRE(rows.size() == 130001); // 1300 / 0.01 + 1

    double peak = 0.0;
    size_t peak_at = 0;
    for (size_t k = 0; k < rows.size(); ++k) {
        if (rows[k][2] > peak) {
            peak = rows[k][2];
            peak_at = k;
        }
    }
    CHECK(peak_at > 0);
    CHECK(rows[peak_at][0] < 50.0);        // peaks within the early weeks
    CHECK(rows.back()[2] < 0.7 * peak);    // then drops toward the endemic level
    CHECK(rows.back()[2] > 0.0);

    // settled: the run went long enough for the vector field to be tiny
    const ScenarioConfig cfg;
    const State last(rows.back()[1], rows.back()[2], rows.back()[3], rows.back()[4]);
    CHECK(rhs(last, cfg.parameters).inf_norm() < 1e-6);
}

TEST_CASE("simulate: invariant subspace I = B = 0 stays exactly zero") {
    TempFile csv("sim_zero.csv");
    const int code = run_cli({"simulate", "--out", csv.path, "--set", "i=0", "--set", "b=0",
                              "--set", "eta1=0", "--t-end", "20"});
    REQUIRE(code == 0);
    for (const auto& row : csv_rows(slurp(csv.path), 6)) {
        CHECK(row[2] == 0.0);
        CHECK(row[4] == 0.0);
    }
}

TEST_CASE("simulate: decimation row count") {
    TempFile csv("sim_decim.csv");
    const int code =
        run_cli({"simulate", "--out", csv.path, "--t-end", "2", "--set", "record_every=10"});
    REQUIRE(code == 0);
    CHECK(csv_rows(slurp(csv.path), 6).size() == 21); // floor(200/10) + 1
}

TEST_CASE("simulate: byte-identical CSV across runs; SVG side files") {
    TempFile csv("sim_det.csv");
    TempFile svg_h("sim_det_humans.svg"); // cleanup
    TempFile svg_b("sim_det_bacteria.svg");
    REQUIRE(run_cli({"simulate", "--out", csv.path, "--t-end", "10", "--svg"}) == 0);
    const std::string first = slurp(csv.path);
    REQUIRE(run_cli({"simulate", "--out", csv.path, "--t-end", "10", "--svg"}) == 0);
    CHECK(first == slurp(csv.path));

    const std::string svg = slurp(svg_h.path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(slurp(svg_b.path).find("<polyline") != std::string::npos);
}

TEST_CASE("emitted numbers round-trip at 17 significant digits") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-30, 30);
    for (int k = 0; k < 1000; ++k) {
        const double x = mant(rng) * std::pow(10.0, expo(rng));
        const std::string s = format17(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
}

TEST_CASE("analyze: text report") {
    std::string out;
    REQUIRE(run_cli({"analyze"}, &out) == 0);
    auto kv = parse_kv(out);
    CHECK(kv["r0_closed_form"].substr(0, 14) == "5.294462647058");
    CHECK(std::strtod(kv["r0_difference"].c_str(), nullptr) < 1e-9);
    CHECK(kv["dfe"] == "(184, 0, 0, 0)");
    // baseline has eta1 > 0: the DFE is not stationary, verdict is skipped
    CHECK(kv["dfe_stationary"] == "no");
    CHECK(kv["dfe_stability"].find("set eta1") != std::string::npos);
    CHECK(kv.find("dfe_verdict") == kv.end());
    CHECK(kv["metzler_a1_stable"] == "yes");
    CHECK(kv["metzler_a3_offdiag_ok"] == "yes");
    CHECK(kv["metzler_a3_stable"] == "no");
    CHECK(kv["r0_below_one"] == "no");
    CHECK(kv["endemic_equilibrium"].substr(0, 6) == "(58.31");
    CHECK(kv["dr0_drho"].substr(0, 8) == "-5.69297");

    SUBCASE("eta1 = 0 gives the verdict") {
        REQUIRE(run_cli({"analyze", "--set", "eta1=0"}, &out) == 0);
        kv = parse_kv(out);
        CHECK(kv["dfe_stationary"] == "yes");
        CHECK(kv["dfe_verdict"] == "unstable");
        CHECK(kv.count("spectral_abscissa") == 1);
    }
    SUBCASE("rho = 1, eta1 = 0: R0 = 0 and a stable DFE") {
        REQUIRE(run_cli({"analyze", "--set", "rho=1", "--set", "eta1=0"}, &out) == 0);
        kv = parse_kv(out);
        CHECK(kv["r0_closed_form"] == "0");
        CHECK(kv["dfe_verdict"] == "locally_stable");
        CHECK(kv["endemic_equilibrium"].substr(0, 4) == "none");
    }
}

TEST_CASE("analyze: JSON output") {
    std::string out;
    REQUIRE(run_cli({"analyze", "--json"}, &out) == 0);
    const auto j = nlohmann::json::parse(out);
    CHECK(std::abs(j["r0"]["closed_form"].get<double>() - 5.294462647058824) < 1e-12);
    CHECK(j["r0"]["difference"].get<double>() < 1e-9);
    CHECK(j["dfe"]["stationary"].get<bool>() == false);
    CHECK(j["dfe_stability"].is_null());
    CHECK(j["metzler"]["a3_offdiagonals_nonnegative"].get<bool>());
    CHECK_FALSE(j["metzler"]["a3_stable"].get<bool>());
    CHECK_FALSE(j["metzler"]["r0_below_one"].get<bool>());
    CHECK(j["endemic_equilibrium"]["state"]["i"].get<double>() > 1.0);
    CHECK(j["endemic_equilibrium"]["rhs_inf_norm"].get<double>() < 1e-10);
    CHECK(j["r0_sensitivity"]["rho"].get<double>() < 0.0);

    SUBCASE("eta1 = 0 populates the stability block") {
        REQUIRE(run_cli({"analyze", "--json", "--set", "eta1=0"}, &out) == 0);
        const auto j2 = nlohmann::json::parse(out);
        CHECK(j2["dfe_stability"]["verdict"] == "unstable");
        CHECK(j2["dfe_stability"]["eigenvalues"].size() == 4);
    }
}

TEST_CASE("compare: information suppresses the outbreak") {
    TempFile csv("cmp_info.csv");
    std::string out;
    // informed baseline vs uninformed (rho = 0, nu_b = 0), shared absolute threshold
    const int code = run_cli({"compare", "--out", csv.path, "--set-b", "rho=0", "--set-b",
                              "nu_b=0", "--threshold", "50", "--svg"},
                             &out);
    REQUIRE(code == 0);

    const auto rows = csv_rows(slurp(csv.path), 11);
    REQUIRE(rows.size() == 20001);
    double peak_a = 0.0, peak_b = 0.0, above_a = 0.0, above_b = 0.0;
    for (size_t k = 0; k < rows.size(); ++k) {
        peak_a = std::max(peak_a, rows[k][2]);
        peak_b = std::max(peak_b, rows[k][7]);
        if (k + 1 < rows.size()) {
            const double dt = rows[k + 1][0] - rows[k][0];
            above_a += dt * ((rows[k][2] > 50.0 ? 0.5 : 0.0) + (rows[k + 1][2] > 50.0 ? 0.5 : 0.0));
            above_b += dt * ((rows[k][7] > 50.0 ? 0.5 : 0.0) + (rows[k + 1][7] > 50.0 ? 0.5 : 0.0));
        }
    }
    CHECK(peak_b > peak_a);        // uninformed peaks strictly higher
    CHECK(above_b > above_a);      // and stays above the threshold strictly longer
    CHECK(out.find("peak I") != std::string::npos);
    CHECK(out.find("time above I > 50") != std::string::npos);

    // the printed stats agree with the CSV-derived ones
    TempFile svg("cmp_info.svg");
    CHECK(slurp(svg.path).find("<polyline") != std::string::npos);

    SUBCASE("uninformed endemic level is at least the informed one") {
        Parameters uninformed;
        uninformed.rho = 0.0;
        uninformed.nu_b = 0.0;
        CHECK(endemic_equilibrium(uninformed).i >= endemic_equilibrium(Parameters{}).i);
    }
}

TEST_CASE("compare: identical configs give identical columns and zero peak difference") {
    TempFile csv("cmp_same.csv");
    std::string out;
    REQUIRE(run_cli({"compare", "--out", csv.path, "--t-end", "20"}, &out) == 0);
    for (const auto& row : csv_rows(slurp(csv.path), 11)) {
        CHECK(row[1] == row[6]);
        CHECK(row[2] == row[7]);
        CHECK(row[3] == row[8]);
        CHECK(row[4] == row[9]);
        CHECK(row[5] == row[10]);
    }
    CHECK(out.find("peak difference (b - a) = 0\n") != std::string::npos);
}

TEST_CASE("sweep: rho grid") {
    TempFile csv("sweep_rho.csv");
    std::string out;
    const int code = run_cli({"sweep", "--param", "rho", "--values", "0,0.25,0.5,0.75,1",
                              "--out", csv.path, "--t-end", "50"},
                             &out);
    REQUIRE(code == 0);
    const std::string text = slurp(csv.path);
    CHECK(text.substr(0, text.find('\n')) == "rho,r0,ee_s,ee_i,ee_r,ee_b,peak_i,error");
    const auto rows = csv_rows(text, 8);
    REQUIRE(rows.size() == 5);
    for (size_t k = 1; k < rows.size(); ++k) CHECK(rows[k][1] < rows[k - 1][1]);
    CHECK(rows.back()[1] == 0.0); // rho = 1 -> R0 = 0
    // rho = 1: transmission off, only the boundary equilibrium -> EE cells blank
    CHECK(std::isnan(rows.back()[2]));
    // rho = 0 has an interior EE
    CHECK(rows.front()[3] > 0.0);

    SUBCASE("11-point grid emits 11 data rows") {
        TempFile csv2("sweep_rho11.csv");
        REQUIRE(run_cli({"sweep", "--param", "rho", "--from", "0", "--to", "1", "--count",
                         "11", "--out", csv2.path, "--t-end", "20"}) == 0);
        CHECK(csv_rows(slurp(csv2.path), 8).size() == 11);
    }
}

TEST_CASE("sweep: R0 is affine in theta2") {
    TempFile csv("sweep_theta2.csv");
    REQUIRE(run_cli({"sweep", "--param", "theta2", "--from", "0.0005", "--to", "0.005",
                     "--count", "7", "--out", csv.path, "--t-end", "10"}) == 0);
    const auto rows = csv_rows(slurp(csv.path), 8);
    REQUIRE(rows.size() == 7);
    // least-squares line through (theta2, r0)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows) {
        sx += row[0];
        sy += row[1];
        sxx += row[0] * row[0];
        sxy += row[0] * row[1];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    for (const auto& row : rows)
        CHECK(std::abs(row[1] - (intercept + slope * row[0])) < 1e-10);
}

TEST_CASE("sweep: failures are annotated, remaining rows still produced") {
    TempFile csv("sweep_bad.csv");
    // rho = 1.5 violates the bound; the other rows must still appear
    REQUIRE(run_cli({"sweep", "--param", "rho", "--values", "0.1,1.5,0.9", "--out", csv.path,
                     "--t-end", "10"}) == 0);
    const std::string text = slurp(csv.path);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line); // header
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].find("rho must lie in [0;1]") == std::string::npos); // commas sanitized...
    CHECK(lines[1].find("must lie in [0") != std::string::npos);        // ...but the bound named
    CHECK(lines[2].substr(0, 4) == "0.90");
}

TEST_CASE("phase: CSV columns and early co-increase of I and B") {
    TempFile csv("phase_base.csv");
    TempFile svg("phase_base.svg");
    std::string out;
    REQUIRE(run_cli({"phase", "--out", csv.path, "--svg"}, &out) == 0);
    const std::string text = slurp(csv.path);
    CHECK(text.substr(0, 6) == "t,I,B\n");
    const auto rows = csv_rows(text, 3);
    REQUIRE(rows.size() == 20001);

    size_t peak_at = 0;
    double peak = 0.0;
    for (size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k][1] >= 0.0);
        CHECK(rows[k][2] >= 0.0);
        if (rows[k][1] > peak) {
            peak = rows[k][1];
            peak_at = k;
        }
    }
    REQUIRE(peak_at > 10);
    // sample correlation of I and B over the rising phase
    double si = 0, sb = 0, sii = 0, sbb = 0, sib = 0;
    const double n = static_cast<double>(peak_at + 1);
    for (size_t k = 0; k <= peak_at; ++k) {
        si += rows[k][1];
        sb += rows[k][2];
        sii += rows[k][1] * rows[k][1];
        sbb += rows[k][2] * rows[k][2];
        sib += rows[k][1] * rows[k][2];
    }
    const double corr = (n * sib - si * sb) /
                        std::sqrt((n * sii - si * si) * (n * sbb - sb * sb));
    CHECK(corr > 0.5);
    CHECK(slurp(svg.path).find("<polyline") != std::string::npos);
}

TEST_CASE("phase: with transmission blocked, I stays 0 while B relaxes to eta1/lambda3") {
    TempFile csv("phase_zero.csv");
    // rho = 1 blocks both routes exactly, so I = 0 is invariant even though
    // eta1 > 0 keeps pumping bacteria into the environment.
    REQUIRE(run_cli({"phase", "--out", csv.path, "--set", "i=0", "--set", "b=0", "--set",
                     "rho=1", "--t-end", "400"}) == 0);
    const auto rows = csv_rows(slurp(csv.path), 3);
    REQUIRE(rows.size() > 100);
    for (const auto& row : rows) CHECK(row[1] == 0.0);
    // B monotone toward the fixed point from below
    for (size_t k = 1; k < rows.size(); ++k) CHECK(rows[k][2] >= rows[k - 1][2]);
    const ScenarioConfig cfg;
    CHECK(rows.back()[2] ==
          doctest::Approx(cfg.parameters.eta1 / cfg.parameters.lambda3).epsilon(1e-3));
}

TEST_CASE("exit-code contract") {
    TempFile csv("exit.csv");
    SUBCASE("0: success") {
        CHECK(run_cli({"simulate", "--out", csv.path, "--t-end", "1"}) == 0);
    }
    SUBCASE("1: validation and parse errors") {
        std::string err;
        CHECK(run_cli({"simulate", "--out", csv.path, "--set", "rho=1.5"}, nullptr, &err) == 1);
        CHECK(err.find("rho must lie in [0,1]") != std::string::npos);
        CHECK(run_cli({"simulate", "--out", csv.path, "--set", "garbage=1"}, nullptr, &err) == 1);
        CHECK(run_cli({"simulate"}, nullptr, &err) == 1);            // missing --out
        CHECK(run_cli({"frobnicate"}, nullptr, &err) == 1);          // unknown subcommand
        CHECK(run_cli({"analyze", "--config", "no_such_file.cfg"}, nullptr, &err) == 1);
        CHECK(run_cli({"sweep", "--param", "rho", "--out", csv.path}, nullptr, &err) == 1);
    }
    SUBCASE("2: numerical failure") {
        std::string err;
        // a steep front stepped far too coarsely undershoots I below -atol
        const int code = run_cli({"simulate", "--out", csv.path, "--set", "theta1=0",
                                  "--set", "theta2=5", "--set", "rho=0", "--set", "nu_b=0",
                                  "--set", "eta1=0", "--set", "eta2=0", "--set", "lambda2=0",
                                  "--set", "s=100", "--set", "i=1", "--set", "b=0",
                                  "--dt", "1", "--t-end", "10"},
                                 nullptr, &err);
        CHECK(code == 2);
        CHECK(err.find("positivity") != std::string::npos);
    }
    SUBCASE("help exits 0") {
        std::string out;
        CHECK(run_cli({"--help"}, &out) == 0);
        CHECK(out.find("simulate") != std::string::npos);
    }
}

TEST_CASE("analyze: --out writes the report to a file") {
    TempFile report("analyze.txt");
    REQUIRE(run_cli({"analyze", "--out", report.path, "--set", "eta1=0"}) == 0);
    const auto kv = parse_kv(slurp(report.path));
    CHECK(kv.at("dfe_verdict") == "unstable");
}

TEST_CASE("config file reading") {
    TempFile cfg_file("scenario.cfg");
    {
        std::ofstream f(cfg_file.path);
        f << "label = from file\n[parameters]\nrho = 0.5\n[solver]\nt_end = 5\n";
    }
    TempFile csv("from_file.csv");
    std::string out;
    REQUIRE(run_cli({"simulate", "--config", cfg_file.path, "--out", csv.path}, &out) == 0);
    CHECK(out.find("from file") != std::string::npos);
    CHECK(csv_rows(slurp(csv.path), 6).size() == 501);
}
