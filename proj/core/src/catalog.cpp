#include "fracfd/catalog.hpp"

#include <cmath>

#include "fracfd/errors.hpp"

namespace fracfd {
namespace {

void require_open_order(double beta) {
    if (!std::isfinite(beta) || beta <= 1.0 || beta >= 2.0) {
        throw ConfigError("catalog problems require 1 < beta < 2");
    }
}

// (x^2 + x^{beta+1} + x^{beta-1})(1 - x) on [0, 1]
AnalyticFunction example1_solution(double beta) {
    return AnalyticFunction(0.0, 1.0, {{1.0, 2.0, 1.0}, {1.0, beta + 1.0, 1.0},
                                       {1.0, beta - 1.0, 1.0}});
}

// x^2(1-x)^2 + w x^{beta/2}(1-x)^{beta/2}
AnalyticFunction example2_solution(double beta, double weight) {
    return AnalyticFunction(0.0, 1.0, {{1.0, 2.0, 2.0}, {weight, beta / 2.0, beta / 2.0}});
}

}  // namespace

SingularTermSpec SingularTermSpec::with_alpha(double new_alpha) const {
    SingularTermSpec out = *this;
    out.fs = (fs + (new_alpha - alpha) * us).simplified();
    out.alpha = new_alpha;
    return out;
}

SingularTermSpec make_singular_term(const FracParams& params, double a, double b,
                                    double rho_left, double rho_right) {
    if (rho_left < 0.0 || rho_right < 0.0) {
        throw ConfigError("singular exponents must be non-negative");
    }
    AnalyticFunction us(a, b, {{1.0, rho_left, rho_right}});
    AnalyticFunction fs = apply_operator(us, params);
    return {std::move(us), std::move(fs), rho_left, rho_right, params.alpha};
}

SingularTermSpec leading_singular_term(const FracParams& params, double a, double b) {
    params.validate();
    if (params.theta == 1.0) return make_singular_term(params, a, b, params.beta - 1.0, 1.0);
    if (params.theta == 0.0) return make_singular_term(params, a, b, 1.0, params.beta - 1.0);
    if (params.theta == 0.5) {
        return make_singular_term(params, a, b, params.beta / 2.0, params.beta / 2.0);
    }
    throw ConfigError("the leading singular exponent is only known for theta in {0, 1/2, 1}");
}

ProblemSpec manufactured_problem(std::string name, const FracParams& params,
                                 const AnalyticFunction& exact) {
    params.validate();
    ProblemSpec p{std::move(name), params, exact.a(), exact.b(), apply_operator(exact, params),
                  exact, std::nullopt};
    return p;
}

ProblemSpec rebind_params(const ProblemSpec& problem, const FracParams& params) {
    params.validate();
    ProblemSpec p = problem;
    p.params = params;
    if (problem.exact) p.rhs = apply_operator(*problem.exact, params);
    p.singular.reset();
    if (params.theta == 0.0 || params.theta == 0.5 || params.theta == 1.0) {
        p.singular = leading_singular_term(params, p.a, p.b);
    }
    return p;
}

SingularTermSpec singular_term_with_exponent(const FracParams& params, double a, double b,
                                             double rho) {
    params.validate();
    if (params.theta == 1.0) return make_singular_term(params, a, b, rho, 1.0);
    if (params.theta == 0.0) return make_singular_term(params, a, b, 1.0, rho);
    if (params.theta == 0.5) return make_singular_term(params, a, b, rho, rho);
    throw ConfigError("a singular exponent can only be placed for theta in {0, 1/2, 1}");
}

std::vector<std::string> catalog_names() {
    return {"ex1-case1", "ex1-case2", "ex2-case1", "ex2-case2", "ex2-case1-unit", "ex3"};
}

bool is_time_dependent_example(std::string_view name) { return name == "ex3"; }

ProblemSpec catalog(std::string_view name, double beta) {
    require_open_order(beta);
    if (name == "ex1-case1" || name == "ex1-case2") {
        const FracParams params{1.0, beta, 1.0};
        ProblemSpec p;
        if (name == "ex1-case1") {
            p = manufactured_problem(std::string(name), params, example1_solution(beta));
        } else {
            p.name = std::string(name);
            p.params = params;
            p.rhs = AnalyticFunction(0.0, 1.0, {{1.0, 1.0, 0.0}, {1.0, 0.0, 0.0}});
        }
        p.singular = leading_singular_term(params, 0.0, 1.0);
        return p;
    }
    if (name == "ex2-case1" || name == "ex2-case2" || name == "ex2-case1-unit") {
        const FracParams params{1.0, beta, 0.5};
        ProblemSpec p;
        if (name == "ex2-case2") {
            p.name = std::string(name);
            p.params = params;
            p.rhs = AnalyticFunction::constant(0.0, 1.0, 1.0);
        } else {
            const double weight = name == "ex2-case1" ? 2.0 : 1.0;
            p = manufactured_problem(std::string(name), params, example2_solution(beta, weight));
        }
        p.singular = leading_singular_term(params, 0.0, 1.0);
        return p;
    }
    if (name == "ex3") {
        throw ConfigError("ex3 is time dependent; use time_catalog / the timestudy command");
    }
    throw ConfigError("unknown example '" + std::string(name) + "'");
}

double SpaceTimeFunction::operator()(double x, double t) const {
    double s = 0.0;
    for (const auto& term : terms) {
        const double tf = term.time_exponent == 0.0 ? 1.0 : std::pow(t, term.time_exponent);
        s += term.coeff * tf * term.space(x);
    }
    return s;
}

AnalyticFunction SpaceTimeFunction::at_time(double t) const {
    if (terms.empty()) throw ConfigError("empty space-time function");
    AnalyticFunction out(terms.front().space.a(), terms.front().space.b());
    for (const auto& term : terms) {
        const double tf = term.time_exponent == 0.0 ? 1.0 : std::pow(t, term.time_exponent);
        out += (term.coeff * tf) * term.space;
    }
    return out.simplified();
}

TimeDependentProblem time_catalog(std::string_view name, double beta) {
    require_open_order(beta);
    if (name != "ex3") throw ConfigError("unknown time-dependent example '" + std::string(name) + "'");

    // u(x,t) = U(x) t^3,  u_t = 0D_x^beta u + f  =>  f = 3 t^2 U - t^3 0D_x^beta U.
    const FracParams params{0.0, beta, 1.0};
    const AnalyticFunction shape = example1_solution(beta);
    const AnalyticFunction minus_derivative = apply_operator(shape, params);

    TimeDependentProblem p;
    p.name = std::string(name);
    p.params = params;
    p.final_time = 1.0;
    p.initial = AnalyticFunction(0.0, 1.0);
    p.source.terms = {{3.0, 2.0, shape}, {1.0, 3.0, minus_derivative}};
    p.exact = SpaceTimeFunction{{{1.0, 3.0, shape}}};
    p.singular = leading_singular_term(params, 0.0, 1.0);
    return p;
}

}  // namespace fracfd
