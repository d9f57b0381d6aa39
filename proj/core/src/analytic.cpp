#include "fracfd/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracfd/errors.hpp"
#include "fracfd/special_functions.hpp"

namespace fracfd {
namespace {

constexpr double kPoleTol = 1e-9;
constexpr double kIntegerTol = 1e-12;
constexpr double kExponentTol = 1e-12;

double power(double base, double e) {
    if (e == 0.0) return 1.0;
    return std::pow(base, e);
}

bool is_nonnegative_integer(double e) {
    return e >= -kIntegerTol && std::abs(e - std::round(e)) < kIntegerTol;
}

double binomial(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

void require_exponent(double e) {
    if (!std::isfinite(e) || e <= -1.0) {
        throw ConfigError("power-function exponent must be finite and > -1");
    }
}

// (x-a)^p (b-x)^q with integer q, rewritten as sum_k c_k (x-a)^{p+k}.
std::vector<Monomial> expand_to_left(const ProductTerm& t, double len) {
    const auto q = static_cast<unsigned>(std::lround(t.right_exp));
    std::vector<Monomial> out;
    out.reserve(q + 1);
    for (unsigned k = 0; k <= q; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out.push_back({t.coeff * binomial(q, k) * power(len, q - k) * sign, t.left_exp + k});
    }
    return out;
}

std::vector<Monomial> expand_to_right(const ProductTerm& t, double len) {
    const auto p = static_cast<unsigned>(std::lround(t.left_exp));
    std::vector<Monomial> out;
    out.reserve(p + 1);
    for (unsigned k = 0; k <= p; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out.push_back({t.coeff * binomial(p, k) * power(len, p - k) * sign, t.right_exp + k});
    }
    return out;
}

// Applies the one-sided power rule to every monomial, dropping annihilated terms.
void differentiate_into(const std::vector<Monomial>& ms, double beta, bool left,
                        std::vector<ProductTerm>& out) {
    for (const auto& m : ms) {
        const double c = special::gamma_ratio(m.exponent + 1.0, m.exponent + 1.0 - beta, kPoleTol);
        if (c == 0.0 || m.coeff == 0.0) continue;
        if (left) {
            out.push_back({m.coeff * c, m.exponent - beta, 0.0});
        } else {
            out.push_back({m.coeff * c, 0.0, m.exponent - beta});
        }
    }
}

}  // namespace

double PowerSum::operator()(double x) const {
    const double base = anchor == Anchor::left ? x - origin : origin - x;
    double s = 0.0;
    for (const auto& m : terms) s += m.coeff * power(base, m.exponent);
    return s;
}

AnalyticFunction::AnalyticFunction(double a, double b, std::vector<ProductTerm> terms)
    : a_(a), b_(b), terms_(std::move(terms)) {
    if (!(b > a)) throw ConfigError("AnalyticFunction: require a < b");
}

AnalyticFunction AnalyticFunction::constant(double a, double b, double c) {
    return AnalyticFunction(a, b, {{c, 0.0, 0.0}});
}

AnalyticFunction AnalyticFunction::from_power_sum(const PowerSum& p, double a, double b) {
    const bool left = p.anchor == Anchor::left;
    if ((left && p.origin != a) || (!left && p.origin != b)) {
        throw ConfigError("power sum origin does not match the interval endpoint");
    }
    std::vector<ProductTerm> terms;
    terms.reserve(p.terms.size());
    for (const auto& m : p.terms) {
        terms.push_back(left ? ProductTerm{m.coeff, m.exponent, 0.0}
                             : ProductTerm{m.coeff, 0.0, m.exponent});
    }
    return AnalyticFunction(a, b, std::move(terms));
}

double AnalyticFunction::operator()(double x) const {
    double s = 0.0;
    for (const auto& t : terms_) {
        s += t.coeff * power(x - a_, t.left_exp) * power(b_ - x, t.right_exp);
    }
    return s;
}

GridFunction AnalyticFunction::sample(const Grid& grid) const {
    GridFunction out(grid);
    for (std::size_t j = 0; j <= grid.intervals(); ++j) out[j] = (*this)(grid.x(j));
    // Remove the rounding in a + M h.
    out[grid.intervals()] = (*this)(grid.b());
    return out;
}

std::vector<double> AnalyticFunction::sample_interior(const Grid& grid) const {
    std::vector<double> out(grid.interior_size());
    for (std::size_t j = 1; j < grid.intervals(); ++j) out[j - 1] = (*this)(grid.x(j));
    return out;
}

AnalyticFunction AnalyticFunction::simplified() const {
    std::vector<ProductTerm> merged;
    for (const auto& t : terms_) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const ProductTerm& m) {
            return std::abs(m.left_exp - t.left_exp) < kExponentTol &&
                   std::abs(m.right_exp - t.right_exp) < kExponentTol;
        });
        if (it == merged.end()) {
            merged.push_back(t);
        } else {
            it->coeff += t.coeff;
        }
    }
    std::erase_if(merged, [](const ProductTerm& t) { return t.coeff == 0.0; });
    return AnalyticFunction(a_, b_, std::move(merged));
}

AnalyticFunction& AnalyticFunction::operator+=(const AnalyticFunction& other) {
    if (other.a_ != a_ || other.b_ != b_) {
        throw ConfigError("cannot add analytic functions on different intervals");
    }
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

AnalyticFunction& AnalyticFunction::operator*=(double c) {
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

PowerSum left_rl_derivative_power(double beta, double xi, double a) {
    require_exponent(xi);
    PowerSum out{Anchor::left, a, {}};
    const double c = special::gamma_ratio(xi + 1.0, xi + 1.0 - beta, kPoleTol);
    if (c != 0.0) out.terms.push_back({c, xi - beta});
    return out;
}

PowerSum right_rl_derivative_power(double beta, double eta, double b) {
    require_exponent(eta);
    PowerSum out{Anchor::right, b, {}};
    const double c = special::gamma_ratio(eta + 1.0, eta + 1.0 - beta, kPoleTol);
    if (c != 0.0) out.terms.push_back({c, eta - beta});
    return out;
}

PowerSum left_rl_derivative(const PowerSum& p, double beta) {
    if (p.anchor != Anchor::left) throw ConfigError("left derivative needs a left-anchored sum");
    PowerSum out{Anchor::left, p.origin, {}};
    for (const auto& m : p.terms) {
        for (const auto& d : left_rl_derivative_power(beta, m.exponent, p.origin).terms) {
            out.terms.push_back({m.coeff * d.coeff, d.exponent});
        }
    }
    return out;
}

PowerSum right_rl_derivative(const PowerSum& p, double beta) {
    if (p.anchor != Anchor::right) throw ConfigError("right derivative needs a right-anchored sum");
    PowerSum out{Anchor::right, p.origin, {}};
    for (const auto& m : p.terms) {
        for (const auto& d : right_rl_derivative_power(beta, m.exponent, p.origin).terms) {
            out.terms.push_back({m.coeff * d.coeff, d.exponent});
        }
    }
    return out;
}

PowerSum expand_polynomial(std::span<const double> coeffs, Anchor anchor, double a, double b) {
    // Left: x = a + (x - a).  Right: x = b - (b - x).
    const double shift = anchor == Anchor::left ? a : b;
    const double sign = anchor == Anchor::left ? 1.0 : -1.0;
    std::vector<double> out(coeffs.size(), 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        for (std::size_t i = 0; i <= k; ++i) {
            const double s = (i % 2 == 0) ? 1.0 : sign;
            out[i] += coeffs[k] * binomial(static_cast<unsigned>(k), static_cast<unsigned>(i)) *
                      power(shift, static_cast<double>(k - i)) * s;
        }
    }
    PowerSum p{anchor, anchor == Anchor::left ? a : b, {}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] != 0.0) p.terms.push_back({out[i], static_cast<double>(i)});
    }
    if (p.terms.empty()) p.terms.push_back({0.0, 0.0});
    return p;
}

AnalyticFunction left_rl_derivative(const AnalyticFunction& f, double beta) {
    const double len = f.b() - f.a();
    std::vector<ProductTerm> out;
    for (const auto& t : f.terms()) {
        if (!is_nonnegative_integer(t.right_exp)) {
            throw ConfigError("left derivative: (b-x) exponent is not a non-negative integer");
        }
        differentiate_into(expand_to_left(t, len), beta, true, out);
    }
    return AnalyticFunction(f.a(), f.b(), std::move(out)).simplified();
}

AnalyticFunction right_rl_derivative(const AnalyticFunction& f, double beta) {
    const double len = f.b() - f.a();
    std::vector<ProductTerm> out;
    for (const auto& t : f.terms()) {
        if (!is_nonnegative_integer(t.left_exp)) {
            throw ConfigError("right derivative: (x-a) exponent is not a non-negative integer");
        }
        differentiate_into(expand_to_right(t, len), beta, false, out);
    }
    return AnalyticFunction(f.a(), f.b(), std::move(out)).simplified();
}

AnalyticFunction apply_operator(const AnalyticFunction& u, const FracParams& params) {
    const double beta = params.beta;
    const double theta = params.theta;
    const double len = u.b() - u.a();
    std::vector<ProductTerm> out;
    for (const auto& t : u.terms()) {
        if (params.alpha != 0.0) out.push_back({params.alpha * t.coeff, t.left_exp, t.right_exp});

        const bool left_ok = theta == 0.0 || is_nonnegative_integer(t.right_exp);
        const bool right_ok = theta == 1.0 || is_nonnegative_integer(t.left_exp);
        if (left_ok && right_ok) {
            std::vector<ProductTerm> d;
            if (theta != 0.0) {
                const auto pieces = expand_to_left(t, len);
                differentiate_into(pieces, beta, true, d);
                for (auto& p : d) p.coeff *= -theta;
                out.insert(out.end(), d.begin(), d.end());
                d.clear();
            }
            if (theta != 1.0) {
                const auto pieces = expand_to_right(t, len);
                differentiate_into(pieces, beta, false, d);
                for (auto& p : d) p.coeff *= -(1.0 - theta);
                out.insert(out.end(), d.begin(), d.end());
            }
            continue;
        }
        const bool riesz = theta == 0.5 && std::abs(t.left_exp - beta / 2.0) < kExponentTol &&
                           std::abs(t.right_exp - beta / 2.0) < kExponentTol;
        if (!riesz) {
            throw ConfigError("no closed-form fractional derivative for this product term");
        }
        const double c = -std::cos(beta * std::numbers::pi / 2.0) * std::tgamma(beta + 1.0);
        out.push_back({t.coeff * c, 0.0, 0.0});
    }
    return AnalyticFunction(u.a(), u.b(), std::move(out)).simplified();
}

}  // namespace fracfd
