#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "fracfd/catalog.hpp"
#include "fracfd/correction.hpp"
#include "fracfd/grid.hpp"
#include "fracfd/report.hpp"
#include "fracfd/solver.hpp"

namespace fracfd {

/// Uniform steps t_n = n tau on [0, T].
class TimeGrid {
public:
    TimeGrid(double final_time, std::size_t steps);

    /// Steps chosen as round(T / tau); throws if tau does not divide T to 1e-9 relative.
    [[nodiscard]] static TimeGrid from_step(double final_time, double tau);

    [[nodiscard]] double final_time() const noexcept { return final_time_; }
    [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
    [[nodiscard]] double tau() const noexcept { return final_time_ / static_cast<double>(steps_); }
    [[nodiscard]] double t(std::size_t n) const noexcept {
        return n == steps_ ? final_time_ : static_cast<double>(n) * tau();
    }

private:
    double final_time_;
    std::size_t steps_;
};

struct TimeStepOptions {
    bool corrected = false;
    SolveMethod method = SolveMethod::automatic;
    KrylovOptions krylov{};
    /// The convergence guard is on: corrected fields feed the next step, so a
    /// single bad ratio would otherwise be amplified step after step.
    CorrectionOptions correction{XiMode::pointwise, 1e-13, true};
    /// Called after every step with the step index and the carried solution.
    std::function<void(std::size_t, const GridFunction&)> on_step;
};

struct TimeSolution {
    GridFunction coarse;               ///< solution at t = T (corrected when requested)
    std::optional<GridFunction> fine;  ///< corrected fine-grid solution at t = T
    std::size_t guard_activations = 0;
};

/// Crank-Nicolson in time with the WSGD operator in space:
///   (I - tau/2 d) u^n = (I + tau/2 d) u^{n-1} + tau f(., t_{n-1/2}),
/// where d = theta delta_- + (1-theta) delta_+.  With `corrected` the step is
/// taken on grids h and h/2; both are corrected with the singular term of the
/// shifted operator (2/tau) I - d and carried to the next step.
/// Corrected runs need an even M >= 4.  Solver failures are rethrown as
/// SolverError naming the step.
[[nodiscard]] TimeSolution cn_wsgd_solve(const TimeDependentProblem& problem, std::size_t intervals,
                                         const TimeGrid& time, const TimeStepOptions& options = {});

/// Error at t = T against the exact solution, one row per M.
[[nodiscard]] ConvergenceReport estimate_spatial_rate(const TimeDependentProblem& problem,
                                                      std::span<const std::size_t> intervals,
                                                      const TimeGrid& time,
                                                      const TimeStepOptions& options = {});

}  // namespace fracfd
