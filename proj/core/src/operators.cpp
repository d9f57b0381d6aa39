#include "fracfd/operators.hpp"

#include <cmath>

#include "fracfd/errors.hpp"
#include "summation.hpp"

namespace fracfd {
namespace {

void require_table(const Grid& grid, double beta, const WeightTable& weights) {
    weights.require_beta(beta);
    if (weights.size() < grid.intervals()) {
        throw ConfigError("weight table is shorter than the grid requires");
    }
}

}  // namespace

GridFunction apply_left_wsgd(const GridFunction& v, double beta) {
    return apply_left_wsgd(v, beta, WeightTable(beta, v.grid().intervals()));
}

GridFunction apply_left_wsgd(const GridFunction& v, double beta, const WeightTable& weights) {
    const Grid& grid = v.grid();
    require_table(grid, beta, weights);
    const auto w = weights.w();
    const std::size_t m = grid.intervals();
    const double scale = std::pow(grid.h(), -beta);
    GridFunction out(grid);
    for (std::size_t j = 1; j < m; ++j) {
        detail::CompensatedSum s;
        for (std::size_t k = 0; k <= j; ++k) s.add(w[k] * v[j - k + 1]);
        out[j] = scale * s.value();
    }
    return out;
}

GridFunction apply_right_wsgd(const GridFunction& v, double beta) {
    return apply_right_wsgd(v, beta, WeightTable(beta, v.grid().intervals()));
}

GridFunction apply_right_wsgd(const GridFunction& v, double beta, const WeightTable& weights) {
    const Grid& grid = v.grid();
    require_table(grid, beta, weights);
    const auto w = weights.w();
    const std::size_t m = grid.intervals();
    const double scale = std::pow(grid.h(), -beta);
    GridFunction out(grid);
    for (std::size_t j = 1; j < m; ++j) {
        detail::CompensatedSum s;
        for (std::size_t k = 0; k <= m - j; ++k) s.add(w[k] * v[j + k - 1]);
        out[j] = scale * s.value();
    }
    return out;
}

GridFunction apply_fcd(const GridFunction& v, double beta) {
    return apply_fcd(v, beta, WeightTable(beta, v.grid().intervals()));
}

GridFunction apply_fcd(const GridFunction& v, double beta, const WeightTable& weights) {
    const Grid& grid = v.grid();
    require_table(grid, beta, weights);
    const auto wc = weights.wc_half();
    const std::size_t m = grid.intervals();
    const double scale = std::pow(grid.h(), -beta);
    GridFunction out(grid);
    for (std::size_t j = 1; j < m; ++j) {
        detail::CompensatedSum s;
        // i = j - k runs over all nodes 0..M.
        for (std::size_t i = 0; i <= m; ++i) s.add(wc[i > j ? i - j : j - i] * v[i]);
        out[j] = scale * s.value();
    }
    return out;
}

ToeplitzMatrix left_wsgd_matrix(const Grid& grid, const WeightTable& weights) {
    require_table(grid, weights.beta(), weights);
    const std::size_t n = grid.interior_size();
    const double scale = std::pow(grid.h(), -weights.beta());
    const auto w = weights.w();
    std::vector<double> col(n), row(n, 0.0);
    for (std::size_t d = 0; d < n; ++d) col[d] = scale * w[d + 1];
    row[0] = col[0];
    if (n > 1) row[1] = scale * w[0];
    return {std::move(col), std::move(row)};
}

ToeplitzMatrix fcd_matrix(const Grid& grid, const WeightTable& weights) {
    require_table(grid, weights.beta(), weights);
    const std::size_t n = grid.interior_size();
    const double scale = std::pow(grid.h(), -weights.beta());
    const auto wc = weights.wc_half();
    std::vector<double> col(n);
    for (std::size_t d = 0; d < n; ++d) col[d] = scale * wc[d];
    auto row = col;
    return {std::move(col), std::move(row)};
}

}  // namespace fracfd
