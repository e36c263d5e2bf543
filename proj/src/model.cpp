#include "typhoid/model.hpp"

#include <cmath>
#include <string>

namespace typhoid {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidParameter(msg);
}

} // namespace

void Parameters::validate() const {
    struct Field { const char* name; double value; };
    const Field nonneg[] = {{"pi1", pi1},         {"pi3", pi3},   {"lambda1", lambda1},
                            {"lambda2", lambda2}, {"theta1", theta1}, {"theta2", theta2},
                            {"nu_b", nu_b},       {"eta1", eta1}, {"eta2", eta2}};
    for (const auto& f : nonneg) {
        require(std::isfinite(f.value) && f.value >= 0.0,
                std::string(f.name) + " must be finite and >= 0");
    }
    require(std::isfinite(pi2) && pi2 > 0.0, "pi2 must be positive");
    require(std::isfinite(lambda3) && lambda3 > 0.0, "lambda3 must be positive");
    require(std::isfinite(cc) && cc > 0.0, "cc must be positive");
    require(std::isfinite(rho) && rho >= 0.0 && rho <= 1.0, "rho must lie in [0,1]");
}

State::State(double s_, double i_, double r_, double b_) : s(s_), i(i_), r(r_), b(b_) {
    struct Field { const char* name; double value; };
    for (const auto& f : {Field{"s", s}, Field{"i", i}, Field{"r", r}, Field{"b", b}}) {
        require(std::isfinite(f.value) && f.value >= 0.0,
                std::string("state component ") + f.name + " must be finite and >= 0");
    }
}

State State::unchecked(double s, double i, double r, double b) noexcept {
    State st;
    st.s = s;
    st.i = i;
    st.r = r;
    st.b = b;
    return st;
}

double Derivative::inf_norm() const noexcept {
    return detail::inf_norm({ds, di, dr, db});
}

double gamma(double b, double cc) {
    if (!(cc > 0.0)) throw std::domain_error("gamma: half-saturation constant cc must be positive");
    if (!(b >= 0.0)) throw std::domain_error("gamma: bacteria concentration b must be >= 0");
    return b / (b + cc);
}

double force_of_infection(const State& state, const Parameters& p) {
    p.validate();
    const double g = gamma(state.b, p.cc);
    const double un_informed = 1.0 - p.rho;
    return p.theta1 * un_informed * g * state.s +
           p.theta2 * un_informed * state.i * state.s / (1.0 + p.nu_b * state.i);
}

double total_population(const State& state) {
    return state.s + state.i + state.r;
}

Derivative rhs(const State& state, const Parameters& p) {
    p.validate();
    const auto d = detail::rhs_raw(state.to_array(), p);
    return {d[0], d[1], d[2], d[3]};
}

double conservation_residual(const State& state, const Parameters& p) {
    const Derivative d = rhs(state, p);
    const double n = total_population(state);
    return (d.ds + d.di + d.dr) - (p.pi1 - p.pi2 * n - p.pi3 * state.i);
}

} // namespace typhoid
