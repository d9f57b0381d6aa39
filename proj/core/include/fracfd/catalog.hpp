#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracfd/analytic.hpp"
#include "fracfd/params.hpp"

namespace fracfd {

/// Singular function u^s = (x-a)^rho_left (b-x)^rho_right together with its
/// exact right-hand side f^s = L u^s for the operator with reaction `alpha`.
struct SingularTermSpec {
    AnalyticFunction us;
    AnalyticFunction fs;
    double rho_left = 0.0;
    double rho_right = 0.0;
    double alpha = 0.0;

    /// The same singular term for the operator with another reaction
    /// coefficient: f^s + (alpha' - alpha) u^s.
    [[nodiscard]] SingularTermSpec with_alpha(double new_alpha) const;
};

/// Builds the singular spec for u^s = (x-a)^rho_left (b-x)^rho_right with a
/// closed-form right-hand side.
[[nodiscard]] SingularTermSpec make_singular_term(const FracParams& params, double a, double b,
                                                  double rho_left, double rho_right);

/// Leading boundary singularity for theta in {0, 1/2, 1}:
/// (x-a)^{beta-1}(b-x) for theta = 1, (x-a)(b-x)^{beta-1} for theta = 0,
/// (x-a)^{beta/2}(b-x)^{beta/2} for theta = 1/2.  Other theta: ConfigError.
[[nodiscard]] SingularTermSpec leading_singular_term(const FracParams& params, double a, double b);

/// Stationary problem  L u = f on (a, b), u(a) = u(b) = 0.
struct ProblemSpec {
    std::string name;
    FracParams params;
    double a = 0.0;
    double b = 1.0;
    AnalyticFunction rhs;
    std::optional<AnalyticFunction> exact;
    std::optional<SingularTermSpec> singular;
};

/// Manufactured problem with exact solution u; the right-hand side is L u.
[[nodiscard]] ProblemSpec manufactured_problem(std::string name, const FracParams& params,
                                               const AnalyticFunction& exact);

/// Stationary catalog entries: ex1-case1, ex1-case2, ex2-case1, ex2-case2,
/// ex2-case1-unit (ex2-case1 with unit weight on the singular part).
[[nodiscard]] ProblemSpec catalog(std::string_view name, double beta);
[[nodiscard]] std::vector<std::string> catalog_names();

/// The same problem under other operator parameters.  A manufactured problem
/// gets the right-hand side of its exact solution under the new operator;
/// otherwise the right-hand side is kept.  The singular term is rebuilt with
/// leading_singular_term, or dropped when that is unavailable for this theta.
[[nodiscard]] ProblemSpec rebind_params(const ProblemSpec& problem, const FracParams& params);

/// Singular term with a chosen exponent rho: (x-a)^rho (b-x) for theta = 1,
/// (x-a)(b-x)^rho for theta = 0 and (x-a)^rho (b-x)^rho for theta = 1/2.
[[nodiscard]] SingularTermSpec singular_term_with_exponent(const FracParams& params, double a,
                                                           double b, double rho);

/// sum_i c_i t^{m_i} g_i(x)
struct SpaceTimeFunction {
    struct Term {
        double coeff;
        double time_exponent;
        AnalyticFunction space;
    };
    std::vector<Term> terms;

    [[nodiscard]] double operator()(double x, double t) const;
    [[nodiscard]] AnalyticFunction at_time(double t) const;
};

/// u_t - theta aD^beta u - (1-theta) xD^beta u = f,  u(x,0) = u0,  zero
/// Dirichlet data.  `singular` is the leading singular term for the
/// stationary operator with alpha = 0.
struct TimeDependentProblem {
    std::string name;
    FracParams params;
    double a = 0.0;
    double b = 1.0;
    double final_time = 1.0;
    AnalyticFunction initial;
    SpaceTimeFunction source;
    std::optional<SpaceTimeFunction> exact;
    std::optional<SingularTermSpec> singular;
};

/// Time-dependent catalog entries: ex3.
[[nodiscard]] TimeDependentProblem time_catalog(std::string_view name, double beta);

[[nodiscard]] bool is_time_dependent_example(std::string_view name);

}  // namespace fracfd
