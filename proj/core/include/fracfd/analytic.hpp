#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracfd/grid.hpp"
#include "fracfd/params.hpp"

namespace fracfd {

enum class Anchor { left, right };

struct Monomial {
    double coeff;
    double exponent;
};

/// sum_i c_i (x - origin)^{e_i} (left anchored) or sum_i c_i (origin - x)^{e_i}
/// (right anchored).
struct PowerSum {
    Anchor anchor = Anchor::left;
    double origin = 0.0;
    std::vector<Monomial> terms;

    [[nodiscard]] double operator()(double x) const;
};

/// coeff * (x - a)^left_exp * (b - x)^right_exp
struct ProductTerm {
    double coeff;
    double left_exp;
    double right_exp;
};

/// Finite sum of product terms on [a, b].  Every right-hand side, exact
/// solution and singular term of the problem catalog has this form, which
/// keeps sampled values bit-reproducible.
class AnalyticFunction {
public:
    AnalyticFunction() : AnalyticFunction(0.0, 1.0) {}
    AnalyticFunction(double a, double b, std::vector<ProductTerm> terms = {});

    [[nodiscard]] static AnalyticFunction constant(double a, double b, double c);
    /// The origin of `p` must coincide with the matching endpoint.
    [[nodiscard]] static AnalyticFunction from_power_sum(const PowerSum& p, double a, double b);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] std::span<const ProductTerm> terms() const noexcept { return terms_; }

    [[nodiscard]] double operator()(double x) const;

    /// Values at all nodes.  Terms with negative exponents are only finite in the interior.
    [[nodiscard]] GridFunction sample(const Grid& grid) const;
    /// Values at x_1..x_{M-1}.
    [[nodiscard]] std::vector<double> sample_interior(const Grid& grid) const;

    /// Merges terms with identical exponents and drops zero coefficients.
    [[nodiscard]] AnalyticFunction simplified() const;

    AnalyticFunction& operator+=(const AnalyticFunction& other);
    AnalyticFunction& operator*=(double c);

    friend AnalyticFunction operator+(AnalyticFunction lhs, const AnalyticFunction& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend AnalyticFunction operator*(double c, AnalyticFunction f) {
        f *= c;
        return f;
    }

private:
    double a_;
    double b_;
    std::vector<ProductTerm> terms_;
};

/// aD_x^beta (x - a)^xi = Gamma(xi+1)/Gamma(xi+1-beta) (x - a)^{xi-beta}, or the
/// zero function when xi + 1 - beta is a non-positive integer.
[[nodiscard]] PowerSum left_rl_derivative_power(double beta, double xi, double a);
/// Mirror of the left formula for (b - x)^eta.
[[nodiscard]] PowerSum right_rl_derivative_power(double beta, double eta, double b);

/// Term-wise derivative of a power sum with the matching orientation.
[[nodiscard]] PowerSum left_rl_derivative(const PowerSum& p, double beta);
[[nodiscard]] PowerSum right_rl_derivative(const PowerSum& p, double beta);

/// Re-expands sum_k coeffs[k] x^k in powers of (x - a) or (b - x).
[[nodiscard]] PowerSum expand_polynomial(std::span<const double> coeffs, Anchor anchor,
                                         double a, double b);

/// Closed-form left / right Riemann-Liouville derivatives of an analytic
/// function.  Each term's opposite-side exponent must be a non-negative
/// integer so that it can be re-expanded; otherwise ConfigError.
[[nodiscard]] AnalyticFunction left_rl_derivative(const AnalyticFunction& f, double beta);
[[nodiscard]] AnalyticFunction right_rl_derivative(const AnalyticFunction& f, double beta);

/// L u = alpha u - theta aD^beta u - (1-theta) xD^beta u in closed form.
/// For theta = 1/2 a term (x-a)^{beta/2}(b-x)^{beta/2} that cannot be expanded
/// uses the Riesz identity: the sum of its left and right derivatives is the
/// constant 2 cos(beta pi/2) Gamma(beta+1).
[[nodiscard]] AnalyticFunction apply_operator(const AnalyticFunction& u, const FracParams& params);

}  // namespace fracfd
