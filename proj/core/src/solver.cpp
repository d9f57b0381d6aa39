#include "fracfd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracfd/errors.hpp"
#include "fracfd/operators.hpp"

namespace fracfd {
namespace {

constexpr double kDenseBackwardTol = 1e-11;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double toeplitz_norm_inf(const ToeplitzMatrix& t) {
    // Row sums are maximal somewhere; bound by the full stencil.
    const auto col = t.first_column();
    const auto row = t.first_row();
    double s = std::abs(col[0]);
    for (std::size_t k = 1; k < col.size(); ++k) s += std::abs(col[k]) + std::abs(row[k]);
    return s;
}

std::vector<double> residual(const ToeplitzMatrix& a, std::span<const double> x,
                             std::span<const double> b) {
    auto r = a.multiply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
}

}  // namespace

std::string_view to_string(SolveMethod m) noexcept {
    switch (m) {
        case SolveMethod::dense_lu: return "dense";
        case SolveMethod::krylov: return "krylov";
        case SolveMethod::automatic: break;
    }
    return "auto";
}

SolveMethod parse_solve_method(std::string_view s) {
    if (s == "dense" || s == "dense-lu") return SolveMethod::dense_lu;
    if (s == "krylov" || s == "gmres") return SolveMethod::krylov;
    if (s == "auto") return SolveMethod::automatic;
    throw ConfigError("unknown solver method '" + std::string(s) + "' (expected dense, krylov or auto)");
}

SolveMethod resolve_method(SolveMethod requested, std::size_t intervals) {
    if (requested == SolveMethod::automatic) {
        return intervals <= kDenseIntervalLimit ? SolveMethod::dense_lu : SolveMethod::krylov;
    }
    if (requested == SolveMethod::dense_lu && intervals > kDenseIntervalLimit) {
        throw ConfigError("dense storage is limited to M <= 4096; use the krylov method");
    }
    return requested;
}

ToeplitzMatrix system_matrix(const FracParams& params, const Grid& grid, Scheme scheme) {
    params.validate(scheme);
    const WeightTable weights(params.beta, grid.intervals());
    if (scheme == Scheme::wsgd) {
        const ToeplitzMatrix s = left_wsgd_matrix(grid, weights);
        const std::size_t n = s.size();
        // A = alpha I - theta S - (1-theta) S^T
        std::vector<double> col(n), row(n);
        for (std::size_t d = 0; d < n; ++d) {
            col[d] = -params.theta * s.first_column()[d] - (1.0 - params.theta) * s.first_row()[d];
            row[d] = -params.theta * s.first_row()[d] - (1.0 - params.theta) * s.first_column()[d];
        }
        col[0] += params.alpha;
        row[0] = col[0];
        return {std::move(col), std::move(row)};
    }
    const ToeplitzMatrix c = fcd_matrix(grid, weights);
    const double factor = std::cos(params.beta * std::numbers::pi / 2.0);
    std::vector<double> col(c.size());
    for (std::size_t d = 0; d < col.size(); ++d) col[d] = factor * c.first_column()[d];
    col[0] += params.alpha;
    auto row = col;
    return {std::move(col), std::move(row)};
}

Eigen::MatrixXd assemble(const FracParams& params, const Grid& grid, Scheme scheme) {
    return system_matrix(params, grid, scheme).dense();
}

GmresResult gmres(const LinearMap& apply_a, const LinearMap& apply_inverse_precond,
                  std::span<const double> b, const KrylovOptions& options, double matrix_norm) {
    const std::size_t n = b.size();
    GmresResult res;
    res.x.assign(n, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    const double target = options.tolerance * bnorm;
    const double eps = std::numeric_limits<double>::epsilon();
    const std::size_t m = std::max<std::size_t>(1, std::min(options.restart, n));

    auto true_residual = [&](std::span<const double> x) {
        auto ax = apply_a(x);
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
        return r;
    };

    std::vector<double> r(b.begin(), b.end());
    double rnorm = bnorm;
    std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> hess(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1);

    while (res.iterations < options.max_iterations) {
        for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / rnorm;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = rnorm;
        std::size_t k = 0;
        for (; k < m && res.iterations < options.max_iterations; ++k) {
            auto w = apply_a(apply_inverse_precond(v[k]));
            ++res.iterations;
            for (std::size_t i = 0; i <= k; ++i) {
                double h = 0.0;
                for (std::size_t q = 0; q < n; ++q) h += w[q] * v[i][q];
                hess[i][k] = h;
                for (std::size_t q = 0; q < n; ++q) w[q] -= h * v[i][q];
            }
            const double hnext = norm2(w);
            hess[k + 1][k] = hnext;
            if (hnext > 0.0) {
                for (std::size_t q = 0; q < n; ++q) v[k + 1][q] = w[q] / hnext;
            }
            for (std::size_t i = 0; i < k; ++i) {
                const double t = cs[i] * hess[i][k] + sn[i] * hess[i + 1][k];
                hess[i + 1][k] = -sn[i] * hess[i][k] + cs[i] * hess[i + 1][k];
                hess[i][k] = t;
            }
            const double denom = std::hypot(hess[k][k], hess[k + 1][k]);
            cs[k] = denom == 0.0 ? 1.0 : hess[k][k] / denom;
            sn[k] = denom == 0.0 ? 0.0 : hess[k + 1][k] / denom;
            hess[k][k] = denom;
            hess[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];
            if (std::abs(g[k + 1]) <= 0.5 * target || hnext == 0.0) {
                ++k;
                break;
            }
        }
        // Back substitution for the least-squares coefficients.
        std::vector<double> y(k, 0.0);
        for (std::size_t ii = k; ii-- > 0;) {
            double s = g[ii];
            for (std::size_t j = ii + 1; j < k; ++j) s -= hess[ii][j] * y[j];
            y[ii] = hess[ii][ii] == 0.0 ? 0.0 : s / hess[ii][ii];
        }
        std::vector<double> update(n, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t q = 0; q < n; ++q) update[q] += y[j] * v[j][q];
        }
        const auto dx = apply_inverse_precond(update);
        for (std::size_t q = 0; q < n; ++q) res.x[q] += dx[q];

        r = true_residual(res.x);
        const double new_norm = norm2(r);
        res.relative_residual = new_norm / bnorm;
        const double floor = 32.0 * eps * (matrix_norm * norm2(res.x) + bnorm);
        if (new_norm <= std::max(target, floor)) {
            res.converged = true;
            return res;
        }
        // Stagnation at the rounding level: a restart cannot improve further.
        if (new_norm >= rnorm && k < m) break;
        rnorm = new_norm;
    }
    res.converged = false;
    return res;
}

struct SystemSolver::DenseFactor {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

SystemSolver::SystemSolver(const FracParams& params, const Grid& grid, Scheme scheme,
                           SolveMethod method, KrylovOptions options)
    : params_(params),
      grid_(grid),
      scheme_(scheme),
      method_(resolve_method(method, grid.intervals())),
      options_(options),
      matrix_(system_matrix(params, grid, scheme)) {
    matrix_norm_inf_ = toeplitz_norm_inf(matrix_);
    if (method_ == SolveMethod::dense_lu) {
        dense_ = std::make_unique<DenseFactor>();
        dense_->lu.compute(matrix_.dense());
        const double rc = dense_->lu.rcond();
        if (!(rc > std::numeric_limits<double>::epsilon())) {
            std::ostringstream os;
            os << "system matrix is numerically singular (rcond = " << rc << ")";
            throw SolverError(os.str());
        }
    } else {
        preconditioner_.emplace(matrix_);
    }
}

SystemSolver::~SystemSolver() = default;
SystemSolver::SystemSolver(SystemSolver&&) noexcept = default;
SystemSolver& SystemSolver::operator=(SystemSolver&&) noexcept = default;

double SystemSolver::backward_error(std::span<const double> u, std::span<const double> f) const {
    const auto r = residual(matrix_, u, f);
    const double denom = matrix_norm_inf_ * norm_inf(u) + norm_inf(f);
    return denom == 0.0 ? 0.0 : norm_inf(r) / denom;
}

GridFunction SystemSolver::solve(std::span<const double> f, SolveStats* stats) const {
    if (f.size() != grid_.interior_size()) {
        throw ConfigError("right-hand side size does not match the grid interior");
    }
    SolveStats local;
    local.method = method_;
    std::vector<double> u;
    if (method_ == SolveMethod::dense_lu) {
        const Eigen::Map<const Eigen::VectorXd> rhs(f.data(), static_cast<Eigen::Index>(f.size()));
        Eigen::VectorXd sol = dense_->lu.solve(rhs);
        u.assign(sol.data(), sol.data() + sol.size());
        local.backward_error = backward_error(u, f);
        if (local.backward_error > kDenseBackwardTol) {
            // One step of iterative refinement before giving up.
            const auto r = residual(matrix_, u, f);
            const Eigen::Map<const Eigen::VectorXd> rr(r.data(), static_cast<Eigen::Index>(r.size()));
            Eigen::VectorXd du = dense_->lu.solve(rr);
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += du[static_cast<Eigen::Index>(i)];
            local.backward_error = backward_error(u, f);
            if (!(local.backward_error <= kDenseBackwardTol)) {
                std::ostringstream os;
                os << "dense solve failed the residual check (backward error "
                   << local.backward_error << ")";
                throw SolverError(os.str());
            }
        }
    } else {
        const auto apply_a = [this](std::span<const double> x) { return matrix_.multiply(x); };
        const auto apply_p = [this](std::span<const double> x) { return preconditioner_->solve(x); };
        auto result = gmres(apply_a, apply_p, f, options_, matrix_norm_inf_);
        local.iterations = result.iterations;
        u = std::move(result.x);
        local.backward_error = backward_error(u, f);
        if (!result.converged) {
            std::ostringstream os;
            os << "GMRES did not converge in " << result.iterations
               << " iterations (relative residual " << result.relative_residual << ")";
            throw SolverError(os.str());
        }
    }
    for (double x : u) {
        if (!std::isfinite(x)) throw SolverError("solve produced non-finite values");
    }
    if (stats != nullptr) *stats = local;
    return GridFunction::from_interior(grid_, u);
}

GridFunction SystemSolver::solve(const AnalyticFunction& rhs, SolveStats* stats) const {
    return solve(rhs.sample_interior(grid_), stats);
}

GridFunction solve_bvp(const ProblemSpec& problem, std::size_t intervals, Scheme scheme,
                       SolveMethod method, KrylovOptions options, SolveStats* stats) {
    if (intervals < 4) throw ConfigError("solve_bvp: need M >= 4");
    const Grid grid(problem.a, problem.b, intervals);
    const SystemSolver solver(problem.params, grid, scheme, method, options);
    return solver.solve(problem.rhs, stats);
}

}  // namespace fracfd
