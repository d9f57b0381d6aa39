#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracfd {

/// Coefficients of (1 - z)^beta: g_0 = 1, g_{k+1} = (1 - (beta+1)/(k+1)) g_k.
/// Accepts any positive finite order.
[[nodiscard]] std::vector<double> grunwald_coeffs(double beta, std::size_t n);

/// Shift weights (lambda_1, lambda_0, lambda_{-1}) of the weighted shifted
/// Grunwald formula with shifts (1, 0, -1).
struct ShiftWeights {
    double lambda1;
    double lambda0;
    double lambda_neg1;
};

[[nodiscard]] ShiftWeights shift_weights(double beta);

/// w_0..w_n, the three-term combination of the shifted Grunwald stencils.
/// Requires 1 < beta <= 2.
[[nodiscard]] std::vector<double> wsgd_weights(double beta, std::size_t n);

/// Centered-difference weights wc_{-n}..wc_n (index n holds wc_0).
/// Requires 1 < beta <= 2 and n >= 1.
[[nodiscard]] std::vector<double> centered_weights(double beta, std::size_t n);

/// Reference value of wc_k through the Gamma-ratio formula
/// -(-1)^k Gamma(beta+1) / (Gamma(beta/2 - k + 1) Gamma(beta/2 + k + 1)).
/// Used to cross-check the recursion.
[[nodiscard]] double centered_weight_direct(double beta, long k);

/// All weight families for one order, computed once up to length n.
/// Immutable after construction.
class WeightTable {
public:
    WeightTable(double beta, std::size_t n);

    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    [[nodiscard]] std::span<const double> g() const noexcept { return g_; }
    [[nodiscard]] std::span<const double> w() const noexcept { return w_; }
    /// wc_0..wc_n (the sequence is symmetric, only k >= 0 is stored).
    [[nodiscard]] std::span<const double> wc_half() const noexcept { return wc_; }
    [[nodiscard]] double wc(long k) const;

    [[nodiscard]] const ShiftWeights& lambdas() const noexcept { return lambdas_; }

    /// Throws ConfigError if `beta` differs from the table's order.
    void require_beta(double beta) const;

private:
    double beta_;
    std::size_t n_;
    ShiftWeights lambdas_;
    std::vector<double> g_;
    std::vector<double> w_;
    std::vector<double> wc_;
};

}  // namespace fracfd
