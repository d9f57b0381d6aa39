#include "fracfd/special_functions.hpp"

#include <cmath>

#include "fracfd/errors.hpp"

namespace fracfd::special {

SignedLogGamma signed_lgamma(double z) {
    int sign = 1;
    if (z < 0.0) {
        // Gamma alternates sign between consecutive negative integers.
        const double fl = std::floor(z);
        sign = (static_cast<long long>(fl) % 2 == 0) ? 1 : -1;
    }
    return {std::lgamma(z), sign};
}

bool is_nonpositive_integer(double z, double tol) {
    const double r = std::round(z);
    return r <= 0.0 && std::abs(z - r) < tol;
}

double reciprocal_gamma(double z, double pole_tol) {
    if (is_nonpositive_integer(z, pole_tol)) return 0.0;
    const auto g = signed_lgamma(z);
    return g.sign * std::exp(-g.log_abs);
}

double gamma_ratio(double num, double den, double pole_tol) {
    if (is_nonpositive_integer(num, pole_tol)) {
        throw ConfigError("gamma_ratio: numerator argument is a pole of Gamma");
    }
    if (is_nonpositive_integer(den, pole_tol)) return 0.0;
    const auto gn = signed_lgamma(num);
    const auto gd = signed_lgamma(den);
    return gn.sign * gd.sign * std::exp(gn.log_abs - gd.log_abs);
}

}  // namespace fracfd::special
