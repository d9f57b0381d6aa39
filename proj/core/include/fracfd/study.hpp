#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fracfd/catalog.hpp"
#include "fracfd/correction.hpp"
#include "fracfd/report.hpp"
#include "fracfd/solver.hpp"

namespace fracfd {

/// Which corrected field a corrected study is measured on.
enum class ErrorGrid {
    coarse,  ///< corrected values at the nodes of the grid with M intervals
    fine,    ///< corrected values on the once-refined grid (2M intervals)
};

[[nodiscard]] std::string_view to_string(ErrorGrid g) noexcept;
[[nodiscard]] ErrorGrid parse_error_grid(std::string_view s);

struct StudyConfig {
    std::string example = "ex1-case1";
    /// Used instead of the catalog entry when set.
    std::optional<ProblemSpec> problem;
    double beta = 1.5;
    std::optional<double> theta;
    std::optional<double> alpha;
    /// Replaces the leading singular exponent (see singular_term_with_exponent).
    std::optional<double> singular_exponent;
    Scheme scheme = Scheme::wsgd;
    bool corrected = false;
    std::vector<std::size_t> grids{64, 128, 256, 512};
    /// Without an exact solution the reference is the corrected solution with 2^level intervals.
    int reference_level = 15;
    SolveMethod method = SolveMethod::automatic;
    KrylovOptions krylov{};
    CorrectionOptions correction{};
    ErrorGrid error_grid = ErrorGrid::coarse;
    /// Directory for cached reference solutions; empty disables the cache.
    std::filesystem::path cache_dir;

    /// Checks everything that does not need the problem itself.
    void validate() const;
};

/// The problem a configuration describes, with overrides applied.
[[nodiscard]] ProblemSpec resolve_problem(const StudyConfig& config);

struct ReferenceOptions {
    SolveMethod method = SolveMethod::automatic;
    KrylovOptions krylov{};
    CorrectionOptions correction{};
    std::filesystem::path cache_dir;
};

/// Solution with 2^level intervals, corrected when the problem has a singular term.
/// With a cache directory the result is stored under a key derived from
/// every input and reused by later calls.
[[nodiscard]] GridFunction reference_solution(const ProblemSpec& problem, Scheme scheme, int level,
                                              const ReferenceOptions& options = {});

/// Solves on each grid of the configuration and tabulates errors and rates.
[[nodiscard]] ConvergenceReport run_study(const StudyConfig& config);

/// Runs independent studies on up to `workers` threads (0: one per core).
/// Results come back in input order.
[[nodiscard]] std::vector<ConvergenceReport> run_studies(const std::vector<StudyConfig>& configs,
                                                         std::size_t workers = 0);

}  // namespace fracfd
