#include "fracfd/study.hpp"

#include <cmath>
#include <chrono>
#include <future>
#include <thread>
#include <sstream>

#include "fracfd/errors.hpp"
#include "reference_cache.hpp"

namespace fracfd {
namespace {

constexpr int kMaxReferenceLevel = 22;

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void describe(std::ostringstream& os, const AnalyticFunction& f) {
    os << '[' << format_exact(f.a()) << ',' << format_exact(f.b());
    for (const auto& t : f.terms()) {
        os << ';' << format_exact(t.coeff) << ',' << format_exact(t.left_exp) << ','
           << format_exact(t.right_exp);
    }
    os << ']';
}

std::string reference_key(const ProblemSpec& p, Scheme scheme, int level, SolveMethod method,
                          const ReferenceOptions& options) {
    std::ostringstream os;
    os << "fracfd-reference v1\nname=" << p.name << "\nalpha=" << format_exact(p.params.alpha)
       << "\nbeta=" << format_exact(p.params.beta) << "\ntheta=" << format_exact(p.params.theta)
       << "\nscheme=" << to_string(scheme) << "\nlevel=" << level << "\nmethod=" << to_string(method)
       << "\ntol=" << format_exact(options.krylov.tolerance) << "\nrhs=";
    describe(os, p.rhs);
    if (p.singular) {
        os << "\nsingular=";
        describe(os, p.singular->us);
        os << "\nguard=" << format_exact(options.correction.guard_scale)
           << "\nxi=" << (options.correction.xi_mode == XiMode::median ? "median" : "pointwise")
           << "\nconvergence_guard=" << (options.correction.convergence_guard ? 1 : 0);
    }
    os << '\n';
    return os.str();
}

GridFunction restrict_to(const GridFunction& fine, const Grid& coarse) {
    const std::size_t mf = fine.grid().intervals();
    const std::size_t mc = coarse.intervals();
    if (mf % mc != 0) throw ConfigError("reference grid does not nest the measured grid");
    const std::size_t stride = mf / mc;
    std::vector<double> v(mc + 1);
    for (std::size_t j = 0; j <= mc; ++j) v[j] = fine[j * stride];
    return {coarse, std::move(v)};
}

}  // namespace

std::string_view to_string(ErrorGrid g) noexcept { return g == ErrorGrid::fine ? "fine" : "coarse"; }

ErrorGrid parse_error_grid(std::string_view s) {
    if (s == "coarse") return ErrorGrid::coarse;
    if (s == "fine") return ErrorGrid::fine;
    throw ConfigError("unknown error grid '" + std::string(s) + "' (coarse, fine)");
}

void StudyConfig::validate() const {
    if (grids.empty()) throw ConfigError("study needs at least one grid");
    std::size_t prev = 0;
    for (const std::size_t m : grids) {
        if (m <= prev) throw ConfigError("grid list must be strictly increasing");
        if (m < 4) throw ConfigError("grids need at least 4 intervals");
        if (corrected && (m < 8 || m % 2 != 0)) {
            throw ConfigError("corrected studies need even interval counts M >= 8");
        }
        prev = m;
    }
    if (krylov.tolerance <= 0.0 || krylov.max_iterations == 0 || krylov.restart == 0) {
        throw ConfigError("invalid Krylov options");
    }
    if (!(correction.guard_scale >= 0.0)) throw ConfigError("guard scale must be non-negative");
}

ProblemSpec resolve_problem(const StudyConfig& config) {
    ProblemSpec p = config.problem ? *config.problem : catalog(config.example, config.beta);
    if (config.theta || config.alpha) {
        FracParams params = p.params;
        if (config.theta) params.theta = *config.theta;
        if (config.alpha) params.alpha = *config.alpha;
        p = rebind_params(p, params);
    }
    if (config.singular_exponent) {
        p.singular = singular_term_with_exponent(p.params, p.a, p.b, *config.singular_exponent);
    }
    p.params.validate(config.scheme);
    return p;
}

GridFunction reference_solution(const ProblemSpec& problem, Scheme scheme, int level,
                                const ReferenceOptions& options) {
    if (level < 3 || level > kMaxReferenceLevel) {
        throw ConfigError("reference level must lie in [3, " + std::to_string(kMaxReferenceLevel) + "]");
    }
    const std::size_t m = std::size_t{1} << level;
    const Grid grid(problem.a, problem.b, m);
    const SolveMethod method = resolve_method(options.method, problem.singular ? 2 * m : m);
    const std::string key = reference_key(problem, scheme, level, method, options);
    if (!options.cache_dir.empty()) {
        if (auto hit = detail::load_cached(options.cache_dir, key, grid)) return *hit;
    }
    GridFunction ref(grid);
    if (problem.singular) {
        ref = correct(problem, m, scheme, {method, options.krylov, options.correction}).corrected_coarse;
    } else {
        ref = solve_bvp(problem, m, scheme, method, options.krylov);
    }
    if (!options.cache_dir.empty()) detail::store_cached(options.cache_dir, key, ref);
    return ref;
}

ConvergenceReport run_study(const StudyConfig& config) {
    config.validate();
    const ProblemSpec problem = resolve_problem(config);
    if (config.corrected && !problem.singular) {
        throw ConfigError("no singular term is known for this problem; give --singular-exponent");
    }
    const bool fine_measure = config.corrected && config.error_grid == ErrorGrid::fine;

    std::optional<GridFunction> reference;
    if (!problem.exact) {
        const std::size_t ref_m = std::size_t{1} << std::max(config.reference_level, 0);
        if (config.reference_level > kMaxReferenceLevel) {
            throw ConfigError("reference level is too large");
        }
        for (const std::size_t m : config.grids) {
            if (!is_power_of_two(m)) {
                throw ConfigError("studies against a reference solution need power-of-two grids");
            }
            if (m * 4 > ref_m) {
                throw ConfigError("reference level must exceed the finest grid exponent by at least 2");
            }
        }
        reference = reference_solution(problem, config.scheme, config.reference_level,
                                       {config.method, config.krylov, config.correction,
                                        config.cache_dir});
    }

    ConvergenceReport report;
    report.set("example", problem.name);
    report.set("beta", format_exact(problem.params.beta));
    report.set("theta", format_exact(problem.params.theta));
    report.set("alpha", format_exact(problem.params.alpha));
    report.set("scheme", std::string(to_string(config.scheme)));
    report.set("corrected", config.corrected ? "true" : "false");
    if (problem.singular) {
        report.set("singular_exponents", format_exact(problem.singular->rho_left) + "," +
                                             format_exact(problem.singular->rho_right));
    }
    report.set("error_grid", std::string(to_string(fine_measure ? ErrorGrid::fine : ErrorGrid::coarse)));
    if (reference) {
        report.set("reference", problem.singular ? "corrected" : "uncorrected");
        report.set("reference_level", std::to_string(config.reference_level));
    } else {
        report.set("reference", "exact");
    }
    report.set("method", std::string(to_string(config.method)));

    std::size_t guarded = 0;
    for (const std::size_t m : config.grids) {
        const Grid grid(problem.a, problem.b, m);
        const SolveMethod method = resolve_method(config.method, config.corrected ? 2 * m : m);
        const auto start = std::chrono::steady_clock::now();
        GridFunction measured(grid);
        if (config.corrected) {
            auto c = correct(problem, m, config.scheme, {method, config.krylov, config.correction});
            guarded += c.guard_activations;
            measured = fine_measure ? std::move(c.corrected_fine) : std::move(c.corrected_coarse);
        } else {
            measured = solve_bvp(problem, m, config.scheme, method, config.krylov);
        }
        const double secs = seconds_since(start);
        const GridFunction ref = reference ? restrict_to(*reference, measured.grid())
                                           : problem.exact->sample(measured.grid());
        report.rows.push_back(
            {m, max_abs_difference(measured, ref), l2_difference(measured, ref), std::nullopt, secs});
    }
    report.set("guard_activations", std::to_string(guarded));
    report.compute_rates();
    return report;
}

std::vector<ConvergenceReport> run_studies(const std::vector<StudyConfig>& configs,
                                            std::size_t workers) {
    for (const auto& c : configs) c.validate();
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<ConvergenceReport> out(configs.size());
    std::size_t next = 0;
    while (next < configs.size()) {
        const std::size_t batch = std::min(workers, configs.size() - next);
        std::vector<std::future<ConvergenceReport>> futures;
        futures.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i) {
            futures.push_back(std::async(batch == 1 ? std::launch::deferred : std::launch::async,
                                         [&cfg = configs[next + i]] { return run_study(cfg); }));
        }
        for (std::size_t i = 0; i < batch; ++i) out[next + i] = futures[i].get();
        next += batch;
    }
    return out;
}

}  // namespace fracfd
