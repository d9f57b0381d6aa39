#include "fracfd/grid.hpp"

#include <algorithm>
#include <cmath>

#include "fracfd/errors.hpp"

namespace fracfd {

Grid::Grid(double a, double b, std::size_t intervals) : a_(a), b_(b), m_(intervals) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a)) {
        throw ConfigError("Grid: require finite a < b");
    }
    if (intervals < 2) throw ConfigError("Grid: need at least 2 intervals");
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(m_ + 1);
    for (std::size_t j = 0; j <= m_; ++j) xs[j] = x(j);
    xs[m_] = b_;
    return xs;
}

std::vector<double> Grid::interior_nodes() const {
    std::vector<double> xs(m_ - 1);
    for (std::size_t j = 1; j < m_; ++j) xs[j - 1] = x(j);
    return xs;
}

GridFunction::GridFunction(Grid grid) : grid_(grid), values_(grid.intervals() + 1, 0.0) {}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.intervals() + 1) {
        throw ConfigError("GridFunction: value count does not match grid");
    }
}

GridFunction GridFunction::from_interior(Grid grid, std::span<const double> interior) {
    if (interior.size() != grid.interior_size()) {
        throw ConfigError("GridFunction: interior size does not match grid");
    }
    GridFunction out(grid);
    std::copy(interior.begin(), interior.end(), out.values_.begin() + 1);
    return out;
}

GridFunction GridFunction::restrict_to_coarse() const {
    const std::size_t m = grid_.intervals();
    if (m % 2 != 0) throw ConfigError("restrict_to_coarse: odd interval count");
    GridFunction out(Grid(grid_.a(), grid_.b(), m / 2));
    for (std::size_t j = 0; j <= m / 2; ++j) out[j] = values_[2 * j];
    return out;
}

GridFunction GridFunction::reversed() const {
    std::vector<double> r(values_.rbegin(), values_.rend());
    return GridFunction(grid_, std::move(r));
}

namespace {

void require_same_grid(const GridFunction& u, const GridFunction& v) {
    if (!(u.grid() == v.grid())) throw ConfigError("grid functions live on different grids");
}

}  // namespace

double max_abs_difference(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v);
    double m = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) m = std::max(m, std::abs(u[j] - v[j]));
    return m;
}

double l2_difference(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v);
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double d = u[j] - v[j];
        s += d * d;
    }
    return std::sqrt(u.grid().h() * s);
}

double inner_product(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v);
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * v[j];
    return u.grid().h() * s;
}

}  // namespace fracfd
