#include "fracfd/correction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "fracfd/errors.hpp"

namespace fracfd {
namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* what) {
    if (!(a.grid() == b.grid())) throw ConfigError(std::string("xi_strength: ") + what);
}

void require_refinement(const Grid& coarse, const Grid& fine) {
    if (!(coarse.refined() == fine)) {
        throw ConfigError("correction: fine field is not on the refined coarse grid");
    }
}

// Fills guarded nodes from the nearest unguarded interior node; ties favour
// the candidate closer to the centre of the grid.
void fill_guarded(std::vector<double>& xi, const std::vector<bool>& ok, std::size_t m) {
    const double centre = static_cast<double>(m) / 2.0;
    for (std::size_t j = 1; j < m; ++j) {
        if (ok[j]) continue;
        std::optional<std::size_t> best;
        for (std::size_t d = 1; d < m && !best; ++d) {
            const bool lo = j > d && j - d >= 1 && ok[j - d];
            const bool hi = j + d <= m - 1 && ok[j + d];
            if (lo && hi) {
                const double dlo = std::abs(static_cast<double>(j - d) - centre);
                const double dhi = std::abs(static_cast<double>(j + d) - centre);
                best = dlo <= dhi ? j - d : j + d;
            } else if (lo) {
                best = j - d;
            } else if (hi) {
                best = j + d;
            }
        }
        xi[j] = xi[*best];
    }
}

double interior_median(const std::vector<double>& xi, const std::vector<bool>& ok) {
    std::vector<double> vals;
    for (std::size_t j = 0; j < xi.size(); ++j) {
        if (ok[j]) vals.push_back(xi[j]);
    }
    const auto mid = vals.begin() + static_cast<std::ptrdiff_t>(vals.size() / 2);
    std::nth_element(vals.begin(), mid, vals.end());
    if (vals.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(vals.begin(), mid);
    return 0.5 * (lower + upper);
}

// u_h + xi (u^s - u^s_h) at the nodes of `u`, given xi already mapped to those nodes.
GridFunction apply_correction(const GridFunction& u, const GridFunction& us_numeric,
                              const GridFunction& us_exact, std::span<const double> xi_nodes) {
    GridFunction out = u;
    const std::size_t m = u.grid().intervals();
    for (std::size_t j = 1; j < m; ++j) {
        out[j] = u[j] + xi_nodes[j] * (us_exact[j] - us_numeric[j]);
    }
    out[0] = 0.0;
    out[m] = 0.0;
    return out;
}

// Strength on the fine grid: coarse node values at even indices, the value of
// the right-hand coarse neighbour at midpoints, and xi(x_{M-1}) at the last one.
std::vector<double> xi_on_fine(const GridFunction& xi) {
    const std::size_t m = xi.grid().intervals();
    std::vector<double> out(2 * m + 1, 0.0);
    for (std::size_t j = 1; j < m; ++j) out[2 * j] = xi[j];
    for (std::size_t j = 0; j < m; ++j) out[2 * j + 1] = j + 1 <= m - 1 ? xi[j + 1] : xi[m - 1];
    return out;
}

XiEstimate estimate_xi(const GridFunction& u_h, const GridFunction& u_half,
                       const GridFunction& us_h, const GridFunction& us_half,
                       const GridFunction* us_exact, const CorrectionOptions& options) {
    require_same_grid(u_h, u_half, "u_{h/2} must be restricted to the coarse grid");
    require_same_grid(u_h, us_h, "u^s_h is on a different grid");
    require_same_grid(u_h, us_half, "u^s_{h/2} must be restricted to the coarse grid");
    const Grid& grid = u_h.grid();
    const std::size_t m = grid.intervals();

    double scale = 0.0;
    for (std::size_t j = 1; j < m; ++j) scale = std::max(scale, std::abs(us_h[j]));
    const double eps_d = options.guard_scale * scale;

    std::vector<double> xi(m + 1, 0.0);
    std::vector<bool> ok(m + 1, false);
    std::size_t good = 0;
    for (std::size_t j = 1; j < m; ++j) {
        const double den = us_half[j] - us_h[j];
        // The ratio extrapolates only where the finer singular solve is the
        // better one; elsewhere it can be arbitrarily large.
        const bool converging = us_exact == nullptr ||
                                std::abs((*us_exact)[j] - us_half[j]) < std::abs((*us_exact)[j] - us_h[j]);
        if (std::abs(den) > eps_d && converging) {
            xi[j] = (u_half[j] - u_h[j]) / den;
            ok[j] = true;
            ++good;
        }
    }
    if (good == 0) {
        throw SolverError(
            "singular-strength estimate failed: the singular solves agree on both grids at every "
            "node (wrong singular term or grid too coarse)");
    }
    if (options.xi_mode == XiMode::median) {
        const double med = interior_median(xi, ok);
        for (std::size_t j = 1; j < m; ++j) xi[j] = med;
    } else {
        fill_guarded(xi, ok, m);
    }
    return {GridFunction(grid, std::move(xi)), (m - 1) - good};
}

struct PairResult {
    GridFunction xi;
    GridFunction corrected_coarse;
    GridFunction corrected_fine;
    std::size_t guarded;
};

PairResult correct_pair(const GridFunction& u_h, const GridFunction& u_fine,
                        const GridFunction& us_h, const GridFunction& us_fine,
                        const AnalyticFunction& us_exact, const CorrectionOptions& options) {
    require_refinement(u_h.grid(), u_fine.grid());
    require_refinement(us_h.grid(), us_fine.grid());
    const GridFunction us_coarse_exact = us_exact.sample(u_h.grid());
    auto est = estimate_xi(u_h, u_fine.restrict_to_coarse(), us_h, us_fine.restrict_to_coarse(),
                           options.convergence_guard ? &us_coarse_exact : nullptr, options);
    const GridFunction us_fine_exact = us_exact.sample(u_fine.grid());
    auto cc = apply_correction(u_h, us_h, us_coarse_exact, est.xi.values());
    const auto xf = xi_on_fine(est.xi);
    auto cf = apply_correction(u_fine, us_fine, us_fine_exact, xf);
    return {std::move(est.xi), std::move(cc), std::move(cf), est.guarded};
}

void require_correctable(std::size_t intervals) {
    if (intervals < 8 || intervals % 2 != 0) {
        throw ConfigError("correction needs an even interval count M >= 8");
    }
}

}  // namespace

XiEstimate xi_strength(const GridFunction& u_h, const GridFunction& u_half,
                       const GridFunction& us_h, const GridFunction& us_half,
                       const CorrectionOptions& options) {
    return estimate_xi(u_h, u_half, us_h, us_half, nullptr, options);
}

CorrectedSolution correct_fields(const GridFunction& u_h, const GridFunction& u_fine,
                                 const GridFunction& us_h, const GridFunction& us_fine,
                                 const AnalyticFunction& us_exact, const CorrectionOptions& options) {
    auto pr = correct_pair(u_h, u_fine, us_h, us_fine, us_exact, options);
    return {u_h, u_fine, std::move(pr.xi), std::move(pr.corrected_coarse),
            std::move(pr.corrected_fine), pr.guarded};
}

CorrectedSolution correct(const ProblemSpec& problem, const SingularTermSpec& singular,
                          std::size_t intervals, Scheme scheme, const CorrectionSolveOptions& options) {
    const SingularTermSpec terms[] = {singular};
    return correct_iterated(problem, terms, intervals, scheme, options);
}

CorrectedSolution correct(const ProblemSpec& problem, std::size_t intervals, Scheme scheme,
                          const CorrectionSolveOptions& options) {
    if (!problem.singular) throw ConfigError("problem has no singular term to correct with");
    return correct(problem, *problem.singular, intervals, scheme, options);
}

CorrectedSolution correct_iterated(const ProblemSpec& problem,
                                   std::span<const SingularTermSpec> terms, std::size_t intervals,
                                   Scheme scheme, const CorrectionSolveOptions& options) {
    if (terms.empty()) throw ConfigError("correct_iterated: empty singular-term list");
    require_correctable(intervals);
    const std::size_t levels = terms.size() + 1;

    std::vector<SystemSolver> solvers;
    solvers.reserve(levels);
    for (std::size_t i = 0; i < levels; ++i) {
        const Grid g(problem.a, problem.b, intervals << i);
        solvers.emplace_back(problem.params, g, scheme,
                             resolve_method(options.method, g.intervals()), options.krylov);
    }

    std::vector<GridFunction> fields;
    fields.reserve(levels);
    for (const auto& s : solvers) fields.push_back(s.solve(problem.rhs));
    const GridFunction u_h = fields[0];
    const GridFunction u_fine = fields[1];

    std::size_t guarded = 0;
    std::optional<PairResult> last;
    for (std::size_t r = 0; r < terms.size(); ++r) {
        const SingularTermSpec& term = terms[r];
        const std::size_t pairs = fields.size() - 1;
        std::vector<GridFunction> singular_solves;
        singular_solves.reserve(pairs + 1);
        for (std::size_t i = 0; i <= pairs; ++i) singular_solves.push_back(solvers[i].solve(term.fs));

        std::vector<GridFunction> next;
        next.reserve(pairs);
        for (std::size_t i = 0; i < pairs; ++i) {
            auto pr = correct_pair(fields[i], fields[i + 1], singular_solves[i],
                                   singular_solves[i + 1], term.us, options.correction);
            guarded += pr.guarded;
            next.push_back(pr.corrected_coarse);
            if (i == 0) last = std::move(pr);
        }
        if (r + 1 < terms.size()) fields = std::move(next);
    }
    return {u_h, u_fine, std::move(last->xi), std::move(last->corrected_coarse),
            std::move(last->corrected_fine), guarded};
}

}  // namespace fracfd
