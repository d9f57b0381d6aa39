// fracfd: solve space-fractional boundary-value problems and run convergence studies.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracfd/catalog.hpp"
#include "fracfd/correction.hpp"
#include "fracfd/errors.hpp"
#include "fracfd/report.hpp"
#include "fracfd/solver.hpp"
#include "fracfd/study.hpp"
#include "fracfd/timestepper.hpp"

namespace {

constexpr int kExitSolver = 2;
constexpr int kExitConfig = 3;

struct CommonArgs {
    std::string example = "ex1-case1";
    std::vector<double> betas{1.5};
    std::optional<double> theta;
    std::optional<double> alpha;
    std::string scheme = "wsgd";
    bool correct = false;
    std::optional<double> singular_exponent;
    std::vector<std::size_t> grids;
    std::string method = "auto";
    double tol = 1e-12;
    std::size_t max_iter = fracfd::KrylovOptions{}.max_iterations;
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App& app, CommonArgs& a) {
    app.add_option("--example", a.example, "catalog example (ex1-case1, ex1-case2, ex2-case1, "
                                           "ex2-case1-unit, ex2-case2, ex3)");
    app.add_option("--beta", a.betas, "fractional order(s) in (1,2)")->delimiter(',');
    app.add_option("--theta", a.theta, "left/right weight theta (overrides the example)");
    app.add_option("--alpha", a.alpha, "reaction coefficient (overrides the example)");
    app.add_option("--scheme", a.scheme, "wsgd or fcd");
    app.add_flag("--correct", a.correct, "apply the two-grid singularity correction");
    app.add_option("--singular-exponent", a.singular_exponent,
                   "override the exponent of the leading singular term");
    app.add_option("--grids", a.grids, "interval counts M, comma separated")->delimiter(',');
    app.add_option("--method", a.method, "linear solver: auto, dense or krylov");
    app.add_option("--tol", a.tol, "Krylov relative tolerance");
    app.add_option("--max-iter", a.max_iter, "Krylov iteration limit");
    app.add_option("--format", a.format, "csv, json or markdown");
    app.add_option("--out", a.out, "output file (default: stdout)");
}

fracfd::StudyConfig to_config(const CommonArgs& a, double beta) {
    fracfd::StudyConfig c;
    c.example = a.example;
    c.beta = beta;
    c.theta = a.theta;
    c.alpha = a.alpha;
    c.singular_exponent = a.singular_exponent;
    c.scheme = fracfd::parse_scheme(a.scheme);
    c.corrected = a.correct;
    if (!a.grids.empty()) c.grids = a.grids;
    c.method = fracfd::parse_solve_method(a.method);
    c.krylov.tolerance = a.tol;
    c.krylov.max_iterations = a.max_iter;
    return c;
}

int run_solve(const CommonArgs& a, const std::string& error_out) {
    if (a.betas.size() != 1) throw fracfd::ConfigError("solve takes a single --beta");
    if (a.grids.size() != 1) throw fracfd::ConfigError("solve takes a single --grids value");
    const auto cfg = to_config(a, a.betas.front());
    cfg.validate();
    const auto problem = fracfd::resolve_problem(cfg);
    const std::size_t m = a.grids.front();
    const auto method = fracfd::resolve_method(cfg.method, a.correct ? 2 * m : m);

    fracfd::GridFunction u(fracfd::Grid(problem.a, problem.b, m));
    std::size_t guarded = 0;
    if (a.correct) {
        if (!problem.singular) throw fracfd::ConfigError("no singular term for this problem");
        auto c = fracfd::correct(problem, m, cfg.scheme, {method, cfg.krylov, cfg.correction});
        guarded = c.guard_activations;
        u = std::move(c.corrected_coarse);
    } else {
        u = fracfd::solve_bvp(problem, m, cfg.scheme, method, cfg.krylov);
    }

    std::ostringstream os;
    os << "# example=" << problem.name << "\n# beta=" << fracfd::format_exact(problem.params.beta)
       << "\n# theta=" << fracfd::format_exact(problem.params.theta)
       << "\n# alpha=" << fracfd::format_exact(problem.params.alpha) << "\n# scheme=" << a.scheme
       << "\n# corrected=" << (a.correct ? "true" : "false") << "\n# M=" << m
       << "\n# method=" << fracfd::to_string(method) << "\n# guard_activations=" << guarded << '\n';
    os << (problem.exact ? "x,u,exact,abs_error\n" : "x,u\n");
    std::optional<fracfd::GridFunction> exact;
    if (problem.exact) exact = problem.exact->sample(u.grid());
    for (std::size_t j = 0; j <= m; ++j) {
        os << fracfd::format_exact(u.grid().x(j)) << ',' << fracfd::format_exact(u[j]);
        if (exact) {
            os << ',' << fracfd::format_exact((*exact)[j]) << ','
               << fracfd::format_exact(std::abs(u[j] - (*exact)[j]));
        }
        os << '\n';
    }
    fracfd::write_text(a.out, os.str());
    if (exact) {
        std::fprintf(stderr, "max error %.6e\n", fracfd::max_abs_difference(u, *exact));
        if (!error_out.empty()) {
            fracfd::emit_pointwise_error(u, *exact, error_out,
                                         {{"example", problem.name},
                                          {"beta", fracfd::format_exact(problem.params.beta)},
                                          {"corrected", a.correct ? "true" : "false"},
                                          {"M", std::to_string(m)}});
        }
    } else if (!error_out.empty()) {
        throw fracfd::ConfigError("--error-out needs an example with an exact solution");
    }
    return 0;
}

int run_study_cmd(const CommonArgs& a, int ref_level, const std::string& measure,
                  const std::string& cache_dir) {
    std::vector<fracfd::StudyConfig> configs;
    for (const double beta : a.betas) {
        auto c = to_config(a, beta);
        c.reference_level = ref_level;
        c.error_grid = fracfd::parse_error_grid(measure);
        c.cache_dir = cache_dir;
        configs.push_back(std::move(c));
    }
    const auto format = fracfd::parse_output_format(a.format);
    fracfd::emit_reports(fracfd::run_studies(configs), format, a.out);
    return 0;
}

int run_timestudy(const CommonArgs& a, std::optional<double> tau, std::optional<std::size_t> steps) {
    const auto format = fracfd::parse_output_format(a.format);
    if (a.theta || a.alpha || a.singular_exponent || a.scheme != "wsgd") {
        throw fracfd::ConfigError("timestudy supports the WSGD scheme with catalog parameters only");
    }
    std::vector<fracfd::ConvergenceReport> reports;
    for (const double beta : a.betas) {
        const auto problem = fracfd::time_catalog(a.example, beta);
        const fracfd::TimeGrid time = steps ? fracfd::TimeGrid(problem.final_time, *steps)
                                            : fracfd::TimeGrid::from_step(problem.final_time,
                                                                          tau.value_or(1e-3));
        fracfd::TimeStepOptions opts;
        opts.corrected = a.correct;
        opts.method = fracfd::parse_solve_method(a.method);
        opts.krylov.tolerance = a.tol;
        opts.krylov.max_iterations = a.max_iter;
        const std::vector<std::size_t> grids =
            a.grids.empty() ? std::vector<std::size_t>{8, 16, 32, 64} : a.grids;
        reports.push_back(fracfd::estimate_spatial_rate(problem, grids, time, opts));
    }
    fracfd::emit_reports(reports, format, a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite difference solvers for space-fractional problems with boundary singularities"};
    app.require_subcommand(1);

    CommonArgs solve_args;
    std::string error_out;
    auto* solve = app.add_subcommand("solve", "solve one problem on one grid and print the solution");
    add_common(*solve, solve_args);
    solve->add_option("--error-out", error_out, "also write the pointwise error to this file");

    CommonArgs study_args;
    int ref_level = 15;
    std::string measure = "coarse";
    std::string cache_dir = ".fracfd-cache";
    auto* study = app.add_subcommand("study", "convergence study over a list of grids");
    add_common(*study, study_args);
    study->add_option("--ref-level", ref_level, "reference grid 2^level when no exact solution is known");
    study->add_option("--error-grid", measure, "corrected field to measure: coarse or fine");
    study->add_option("--cache-dir", cache_dir, "reference cache directory (empty disables)");

    CommonArgs time_args;
    time_args.example = "ex3";
    std::optional<double> tau;
    std::optional<std::size_t> steps;
    auto* timestudy = app.add_subcommand("timestudy", "spatial convergence of the Crank-Nicolson solver");
    add_common(*timestudy, time_args);
    timestudy->add_option("--tau", tau, "time step (default 1e-3)");
    timestudy->add_option("--steps", steps, "number of time steps (overrides --tau)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*solve) return run_solve(solve_args, error_out);
        if (*study) return run_study_cmd(study_args, ref_level, measure, cache_dir);
        if (*timestudy) return run_timestudy(time_args, tau, steps);
    } catch (const fracfd::ConfigError& e) {
        std::cerr << "fracfd: configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fracfd::SolverError& e) {
        std::cerr << "fracfd: solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "fracfd: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
