#pragma once

#include "fracfd/grid.hpp"
#include "fracfd/toeplitz.hpp"
#include "fracfd/weights.hpp"

namespace fracfd {

// Matrix-free discrete fractional operators.  Each returns a grid function
// whose interior holds the operator values at x_1..x_{M-1} and whose
// boundary entries are zero.  Sums are accumulated with compensation.

/// h^{-beta} sum_{k=0}^{j} w_k v_{j-k+1}
[[nodiscard]] GridFunction apply_left_wsgd(const GridFunction& v, double beta);
[[nodiscard]] GridFunction apply_left_wsgd(const GridFunction& v, double beta,
                                           const WeightTable& weights);

/// h^{-beta} sum_{k=0}^{M-j} w_k v_{j+k-1}
[[nodiscard]] GridFunction apply_right_wsgd(const GridFunction& v, double beta);
[[nodiscard]] GridFunction apply_right_wsgd(const GridFunction& v, double beta,
                                            const WeightTable& weights);

/// h^{-beta} sum_{k=-M+j}^{j} wc_k v_{j-k}
[[nodiscard]] GridFunction apply_fcd(const GridFunction& v, double beta);
[[nodiscard]] GridFunction apply_fcd(const GridFunction& v, double beta,
                                     const WeightTable& weights);

/// Interior matrix S of the left operator, h^{-beta} w_{i-j+1} (lower Hessenberg).
/// The right operator's matrix is its transpose.
[[nodiscard]] ToeplitzMatrix left_wsgd_matrix(const Grid& grid, const WeightTable& weights);

/// Symmetric interior matrix C of the centered operator, h^{-beta} wc_{i-j}.
[[nodiscard]] ToeplitzMatrix fcd_matrix(const Grid& grid, const WeightTable& weights);

}  // namespace fracfd
