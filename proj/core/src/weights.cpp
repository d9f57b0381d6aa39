#include "fracfd/weights.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fracfd/errors.hpp"
#include "fracfd/special_functions.hpp"

namespace fracfd {
namespace {

void require_order(double beta) {
    if (!std::isfinite(beta) || beta <= 1.0 || beta > 2.0) {
        std::ostringstream os;
        os << "fractional order must lie in (1, 2], got " << beta;
        throw ConfigError(os.str());
    }
}

}  // namespace

std::vector<double> grunwald_coeffs(double beta, std::size_t n) {
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw ConfigError("grunwald_coeffs: order must be positive and finite");
    }
    std::vector<double> g(n + 1);
    g[0] = 1.0;
    // g_1 = -beta exactly; the recursion would round 1 - (beta + 1).
    if (n >= 1) g[1] = -beta;
    for (std::size_t k = 1; k < n; ++k) {
        g[k + 1] = (1.0 - (beta + 1.0) / static_cast<double>(k + 1)) * g[k];
    }
    return g;
}

ShiftWeights shift_weights(double beta) {
    const double b2 = beta * beta;
    return {(b2 + 3.0 * beta + 2.0) / 12.0, (4.0 - b2) / 6.0, (b2 - 3.0 * beta + 2.0) / 12.0};
}

std::vector<double> wsgd_weights(double beta, std::size_t n) {
    require_order(beta);
    const auto g = grunwald_coeffs(beta, n);
    const auto lam = shift_weights(beta);
    std::vector<double> w(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double v = lam.lambda1 * g[k];
        if (k >= 1) v += lam.lambda0 * g[k - 1];
        if (k >= 2) v += lam.lambda_neg1 * g[k - 2];
        w[k] = v;
    }
    return w;
}

std::vector<double> centered_weights(double beta, std::size_t n) {
    require_order(beta);
    if (n < 1) throw ConfigError("centered_weights: half-width must be >= 1");
    std::vector<double> half(n + 1);
    half[0] = -std::exp(std::lgamma(beta + 1.0) - 2.0 * std::lgamma(beta / 2.0 + 1.0));
    for (std::size_t k = 1; k <= n; ++k) {
        half[k] = (1.0 - (beta + 1.0) / (beta / 2.0 + static_cast<double>(k))) * half[k - 1];
    }
    std::vector<double> out(2 * n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        out[n + k] = half[k];
        out[n - k] = half[k];
    }
    return out;
}

double centered_weight_direct(double beta, long k) {
    require_order(beta);
    const long m = std::labs(k);
    // 1/Gamma(beta/2 - m + 1) vanishes at beta = 2 for m >= 2.
    const double inv = special::reciprocal_gamma(beta / 2.0 - static_cast<double>(m) + 1.0);
    if (inv == 0.0) return 0.0;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double ratio = special::gamma_ratio(beta + 1.0, beta / 2.0 + static_cast<double>(m) + 1.0);
    return -sign * ratio * inv;
}

WeightTable::WeightTable(double beta, std::size_t n)
    : beta_(beta), n_(n), lambdas_(shift_weights(beta)) {
    require_order(beta);
    g_ = grunwald_coeffs(beta, n);
    w_ = wsgd_weights(beta, n);
    const auto full = centered_weights(beta, n < 1 ? 1 : n);
    const std::size_t half = n < 1 ? 1 : n;
    wc_.assign(full.begin() + static_cast<std::ptrdiff_t>(half), full.end());
    wc_.resize(n + 1);
}

double WeightTable::wc(long k) const {
    const auto m = static_cast<std::size_t>(std::labs(k));
    if (m > n_) throw ConfigError("WeightTable::wc: index beyond table size");
    return wc_[m];
}

void WeightTable::require_beta(double beta) const {
    if (beta != beta_) {
        std::ostringstream os;
        os << "weight table built for order " << beta_ << " used with order " << beta;
        throw ConfigError(os.str());
    }
}

}  // namespace fracfd
