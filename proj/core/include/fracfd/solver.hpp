#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fracfd/catalog.hpp"
#include "fracfd/grid.hpp"
#include "fracfd/params.hpp"
#include "fracfd/toeplitz.hpp"

namespace fracfd {

enum class SolveMethod { automatic, dense_lu, krylov };

[[nodiscard]] std::string_view to_string(SolveMethod m) noexcept;
[[nodiscard]] SolveMethod parse_solve_method(std::string_view s);

/// Largest interval count for which the dense path is allowed.
inline constexpr std::size_t kDenseIntervalLimit = 4096;

/// automatic -> dense_lu for M <= kDenseIntervalLimit, krylov above.
[[nodiscard]] SolveMethod resolve_method(SolveMethod requested, std::size_t intervals);

struct KrylovOptions {
    double tolerance = 1e-12;
    std::size_t max_iterations = 2000;
    std::size_t restart = 60;
};

/// System matrix of the scheme on the interior nodes, as a Toeplitz matrix:
/// alpha I - theta S - (1-theta) S^T for WSGD, alpha I + cos(beta pi/2) C for FCD.
[[nodiscard]] ToeplitzMatrix system_matrix(const FracParams& params, const Grid& grid,
                                           Scheme scheme);

/// Dense (M-1) x (M-1) system matrix.
[[nodiscard]] Eigen::MatrixXd assemble(const FracParams& params, const Grid& grid, Scheme scheme);

using LinearMap = std::function<std::vector<double>(std::span<const double>)>;

struct GmresResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Restarted GMRES with right preconditioning.  Converges when the true
/// residual satisfies ||b - A x||_2 <= max(tol ||b||_2, 32 eps (||A|| ||x||_2 + ||b||_2)),
/// the second term being the rounding level of the matrix-vector product.
[[nodiscard]] GmresResult gmres(const LinearMap& apply_a, const LinearMap& apply_inverse_precond,
                                std::span<const double> b, const KrylovOptions& options,
                                double matrix_norm = 0.0);

struct SolveStats {
    SolveMethod method = SolveMethod::dense_lu;
    std::size_t iterations = 0;
    /// ||A u - f||_inf / (||A||_inf ||u||_inf + ||f||_inf)
    double backward_error = 0.0;
};

/// Factorized (dense) or preconditioned (Krylov) solver for one scheme on one
/// grid.  Construction does the expensive work; solve() may be called for
/// many right-hand sides and concurrently.
class SystemSolver {
public:
    SystemSolver(const FracParams& params, const Grid& grid, Scheme scheme,
                 SolveMethod method = SolveMethod::automatic, KrylovOptions options = {});
    ~SystemSolver();
    SystemSolver(SystemSolver&&) noexcept;
    SystemSolver& operator=(SystemSolver&&) noexcept;

    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
    [[nodiscard]] const FracParams& params() const noexcept { return params_; }
    [[nodiscard]] Scheme scheme() const noexcept { return scheme_; }
    [[nodiscard]] SolveMethod method() const noexcept { return method_; }
    [[nodiscard]] const ToeplitzMatrix& matrix() const noexcept { return matrix_; }

    /// Solution with zero boundary values for the interior data f_1..f_{M-1}.
    [[nodiscard]] GridFunction solve(std::span<const double> rhs_interior,
                                     SolveStats* stats = nullptr) const;
    [[nodiscard]] GridFunction solve(const AnalyticFunction& rhs, SolveStats* stats = nullptr) const;

    /// ||A u - f||_inf relative to ||A||_inf ||u||_inf + ||f||_inf.
    [[nodiscard]] double backward_error(std::span<const double> u_interior,
                                        std::span<const double> rhs_interior) const;

private:
    struct DenseFactor;
    FracParams params_;
    Grid grid_;
    Scheme scheme_;
    SolveMethod method_;
    KrylovOptions options_;
    ToeplitzMatrix matrix_;
    double matrix_norm_inf_ = 0.0;
    std::unique_ptr<DenseFactor> dense_;
    std::optional<StrangCirculant> preconditioner_;
};

/// Solves the problem's scheme on M intervals of [a, b].
[[nodiscard]] GridFunction solve_bvp(const ProblemSpec& problem, std::size_t intervals, Scheme scheme,
                                     SolveMethod method = SolveMethod::automatic,
                                     KrylovOptions options = {}, SolveStats* stats = nullptr);

}  // namespace fracfd
