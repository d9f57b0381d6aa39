#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracfd/catalog.hpp"
#include "fracfd/grid.hpp"
#include "fracfd/solver.hpp"

namespace fracfd {

/// How the strength of the singular part is represented.
enum class XiMode {
    pointwise,  ///< one ratio per coarse interior node
    median,     ///< interior median of the pointwise ratios, applied everywhere
};

struct CorrectionOptions {
    XiMode xi_mode = XiMode::pointwise;
    /// Denominators with |.| <= guard_scale * max_j |u^s_h(x_j)| are not used.
    double guard_scale = 1e-13;
    /// Also skip nodes where the singular solve on h/2 is not closer to u^s
    /// than the one on h.  Only applies where the exact u^s is known
    /// (correct_fields and everything built on it).
    bool convergence_guard = false;
};

struct XiEstimate {
    GridFunction xi;
    std::size_t guarded = 0;
};

/// xi(x_j) = (u_{h/2} - u_h) / (u^s_{h/2} - u^s_h) at the coarse interior nodes.
/// All four arguments live on the coarse grid; the fine solves must already be
/// restricted to the even nodes.  Guarded nodes copy the nearest unguarded
/// interior value (ties go toward the centre).  Throws SolverError when every
/// node is guarded.
[[nodiscard]] XiEstimate xi_strength(const GridFunction& u_h, const GridFunction& u_half,
                                     const GridFunction& us_h, const GridFunction& us_half,
                                     const CorrectionOptions& options = {});

struct CorrectedSolution {
    GridFunction coarse;            ///< u_h
    GridFunction fine;              ///< u_{h/2}
    GridFunction xi;                ///< strength on the coarse grid
    GridFunction corrected_coarse;  ///< u_h + xi (u^s - u^s_h)
    GridFunction corrected_fine;    ///< corrected values on the fine grid
    std::size_t guard_activations = 0;
};

/// Correction from already computed solves.  `u_fine` and `us_fine` live on the
/// once-refined grid of `u_h`.  Fine-grid values use xi(x_j) at the coarse
/// nodes, xi(x_{j+1}) at the midpoint x_{j+1/2} and xi(x_{M-1}) at the last one.
[[nodiscard]] CorrectedSolution correct_fields(const GridFunction& u_h, const GridFunction& u_fine,
                                               const GridFunction& us_h, const GridFunction& us_fine,
                                               const AnalyticFunction& us_exact,
                                               const CorrectionOptions& options = {});

struct CorrectionSolveOptions {
    SolveMethod method = SolveMethod::automatic;
    KrylovOptions krylov{};
    CorrectionOptions correction{};
};

/// Two-grid extrapolation: solves the problem and the singular problem with
/// steps h and h/2, estimates xi and corrects.  M must be even and >= 8.
[[nodiscard]] CorrectedSolution correct(const ProblemSpec& problem, const SingularTermSpec& singular,
                                        std::size_t intervals, Scheme scheme,
                                        const CorrectionSolveOptions& options = {});

/// Uses problem.singular.
[[nodiscard]] CorrectedSolution correct(const ProblemSpec& problem, std::size_t intervals,
                                        Scheme scheme, const CorrectionSolveOptions& options = {});

/// Repeats the correction once per singular term.  With K terms the problem is
/// solved on K+1 nested grids; round r corrects each adjacent pair of the
/// previous round's fields with term r, so every round starts from corrected
/// solutions.  A single term is identical to correct().
[[nodiscard]] CorrectedSolution correct_iterated(const ProblemSpec& problem,
                                                 std::span<const SingularTermSpec> terms,
                                                 std::size_t intervals, Scheme scheme,
                                                 const CorrectionSolveOptions& options = {});

}  // namespace fracfd
