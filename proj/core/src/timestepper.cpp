#include "fracfd/timestepper.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "fracfd/errors.hpp"

namespace fracfd {
namespace {

// Right-hand side of the scaled step  A u^n = 2 alpha u^{n-1} - A u^{n-1} + 2 f
// with A = alpha I - d, alpha = 2/tau.
std::vector<double> step_rhs(const SystemSolver& solver, const GridFunction& prev,
                             const std::vector<double>& source, double alpha) {
    const auto au = solver.matrix().multiply(prev.interior());
    std::vector<double> rhs(au.size());
    const auto p = prev.interior();
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] = 2.0 * alpha * p[i] - au[i] + 2.0 * source[i];
    }
    return rhs;
}

GridFunction solve_step(const SystemSolver& solver, const std::vector<double>& rhs, std::size_t n) {
    try {
        return solver.solve(rhs);
    } catch (const SolverError& e) {
        throw SolverError("time step " + std::to_string(n) + ": " + e.what());
    }
}

}  // namespace

TimeGrid::TimeGrid(double final_time, std::size_t steps) : final_time_(final_time), steps_(steps) {
    if (!(final_time > 0.0) || !std::isfinite(final_time)) throw ConfigError("final time must be positive");
    if (steps == 0) throw ConfigError("number of time steps must be positive");
}

TimeGrid TimeGrid::from_step(double final_time, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("time step must be positive");
    const double n = std::round(final_time / tau);
    if (n < 1.0 || std::abs(n * tau - final_time) > 1e-9 * final_time) {
        throw ConfigError("time step does not divide the final time");
    }
    return {final_time, static_cast<std::size_t>(n)};
}

TimeSolution cn_wsgd_solve(const TimeDependentProblem& problem, std::size_t intervals,
                           const TimeGrid& time, const TimeStepOptions& options) {
    if (intervals < 4) throw ConfigError("need at least 4 intervals");
    const double tau = time.tau();
    const double alpha = 2.0 / tau;
    FracParams params = problem.params;
    params.alpha = alpha;
    params.validate(Scheme::wsgd);

    const Grid coarse(problem.a, problem.b, intervals);
    const SystemSolver coarse_solver(params, coarse, Scheme::wsgd,
                                     resolve_method(options.method, intervals), options.krylov);
    GridFunction u = problem.initial.sample(coarse);
    u[0] = 0.0;
    u[intervals] = 0.0;

    if (!options.corrected) {
        for (std::size_t n = 1; n <= time.steps(); ++n) {
            const double tm = 0.5 * (time.t(n - 1) + time.t(n));
            const auto f = problem.source.at_time(tm).sample_interior(coarse);
            u = solve_step(coarse_solver, step_rhs(coarse_solver, u, f, alpha), n);
            if (options.on_step) options.on_step(n, u);
        }
        return {std::move(u), std::nullopt, 0};
    }

    if (!problem.singular) throw ConfigError("corrected time stepping needs a singular term");
    // Each step is corrected from two solves only, so the coarsest grid the
    // correction can work with (three interior nodes) is allowed here.
    if (intervals < 4 || intervals % 2 != 0) {
        throw ConfigError("corrected time stepping needs an even interval count M >= 4");
    }
    const Grid fine = coarse.refined();
    const SystemSolver fine_solver(params, fine, Scheme::wsgd,
                                   resolve_method(options.method, fine.intervals()), options.krylov);
    // The singular solves do not depend on the step, so they are done once.
    const SingularTermSpec term = problem.singular->with_alpha(alpha);
    const GridFunction us_coarse = coarse_solver.solve(term.fs);
    const GridFunction us_fine = fine_solver.solve(term.fs);

    GridFunction v = problem.initial.sample(fine);
    v[0] = 0.0;
    v[fine.intervals()] = 0.0;
    std::size_t guarded = 0;
    for (std::size_t n = 1; n <= time.steps(); ++n) {
        const double tm = 0.5 * (time.t(n - 1) + time.t(n));
        const AnalyticFunction src = problem.source.at_time(tm);
        const auto uc = solve_step(coarse_solver,
                                   step_rhs(coarse_solver, u, src.sample_interior(coarse), alpha), n);
        const auto uf = solve_step(fine_solver,
                                   step_rhs(fine_solver, v, src.sample_interior(fine), alpha), n);
        auto c = correct_fields(uc, uf, us_coarse, us_fine, term.us, options.correction);
        guarded += c.guard_activations;
        u = std::move(c.corrected_coarse);
        v = std::move(c.corrected_fine);
        if (options.on_step) options.on_step(n, u);
    }
    return {std::move(u), std::move(v), guarded};
}

ConvergenceReport estimate_spatial_rate(const TimeDependentProblem& problem,
                                        std::span<const std::size_t> intervals, const TimeGrid& time,
                                        const TimeStepOptions& options) {
    if (!problem.exact) throw ConfigError("spatial rate estimate needs an exact solution");
    if (intervals.empty()) throw ConfigError("empty grid list");
    ConvergenceReport report;
    report.set("example", problem.name);
    report.set("beta", format_exact(problem.params.beta));
    report.set("theta", format_exact(problem.params.theta));
    report.set("scheme", options.corrected ? "cn-i-wsgd" : "cn-wsgd");
    report.set("corrected", options.corrected ? "true" : "false");
    report.set("final_time", format_exact(time.final_time()));
    report.set("steps", std::to_string(time.steps()));
    report.set("tau", format_exact(time.tau()));
    report.set("error_grid", "coarse");
    if (options.corrected) {
        report.set("step_seed", "corrected solutions on both grids carried to the next step");
        report.set("convergence_guard", options.correction.convergence_guard ? "true" : "false");
    }
    report.set("reference", "exact");

    const AnalyticFunction exact = problem.exact->at_time(time.final_time());
    std::size_t guarded = 0;
    std::size_t prev = 0;
    for (const std::size_t m : intervals) {
        if (m <= prev) throw ConfigError("grid list must be strictly increasing");
        prev = m;
        const auto start = std::chrono::steady_clock::now();
        const auto sol = cn_wsgd_solve(problem, m, time, options);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        guarded += sol.guard_activations;
        const GridFunction ref = exact.sample(sol.coarse.grid());
        report.rows.push_back({m, max_abs_difference(sol.coarse, ref), l2_difference(sol.coarse, ref),
                               std::nullopt, secs});
    }
    report.set("guard_activations", std::to_string(guarded));
    report.compute_rates();
    return report;
}

}  // namespace fracfd
