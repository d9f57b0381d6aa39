#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracfd {

/// Uniform mesh x_j = a + j h, 0 <= j <= M, on [a, b].
class Grid {
public:
    Grid(double a, double b, std::size_t intervals);

    [[nodiscard]] static Grid unit(std::size_t intervals) { return {0.0, 1.0, intervals}; }

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] std::size_t intervals() const noexcept { return m_; }
    [[nodiscard]] std::size_t interior_size() const noexcept { return m_ - 1; }
    [[nodiscard]] double h() const noexcept { return (b_ - a_) / static_cast<double>(m_); }
    [[nodiscard]] double x(std::size_t j) const noexcept {
        return a_ + static_cast<double>(j) * h();
    }
    [[nodiscard]] std::vector<double> nodes() const;
    [[nodiscard]] std::vector<double> interior_nodes() const;

    /// The grid with twice as many intervals.
    [[nodiscard]] Grid refined() const { return {a_, b_, 2 * m_}; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double a_;
    double b_;
    std::size_t m_;
};

/// Nodal values v_0..v_M on a grid.
class GridFunction {
public:
    explicit GridFunction(Grid grid);
    GridFunction(Grid grid, std::vector<double> values);

    /// Boundary values are zero; `interior` holds v_1..v_{M-1}.
    [[nodiscard]] static GridFunction from_interior(Grid grid, std::span<const double> interior);

    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t j) const noexcept { return values_[j]; }
    [[nodiscard]] double& operator[](std::size_t j) noexcept { return values_[j]; }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }
    [[nodiscard]] std::span<const double> interior() const noexcept {
        return std::span<const double>(values_).subspan(1, values_.size() - 2);
    }
    [[nodiscard]] std::span<double> interior() noexcept {
        return std::span<double>(values_).subspan(1, values_.size() - 2);
    }

    /// Values at the even-indexed nodes, i.e. the coarse grid with half the intervals.
    [[nodiscard]] GridFunction restrict_to_coarse() const;

    /// Mirror image v_{M-j}.
    [[nodiscard]] GridFunction reversed() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

[[nodiscard]] double max_abs_difference(const GridFunction& u, const GridFunction& v);
/// sqrt(h * sum_j (u_j - v_j)^2)
[[nodiscard]] double l2_difference(const GridFunction& u, const GridFunction& v);
/// h * sum_j u_j v_j
[[nodiscard]] double inner_product(const GridFunction& u, const GridFunction& v);

}  // namespace fracfd
