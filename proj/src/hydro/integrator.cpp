#include "efluid/hydro/integrator.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace efluid::hydro {

CflError::CflError(double dt, double bound)
    : ValidationError("run.dt", fmt::format("dt = {} exceeds the CFL bound {}", dt, bound)), bound_(bound)
{
}

double cfl_bound(const State& s, const Model& m)
{
    if (s.empty()) return std::numeric_limits<double>::infinity();
    const auto& grid = s.front().U.grid();
    double dx = grid.spacing(0);
    for (int d = 1; d < grid.dim(); ++d) dx = std::min(dx, grid.spacing(d));
    const double speed = m.wave_speed(s);
    if (!(speed > 0.0)) return std::numeric_limits<double>::infinity();
    return 0.5 * dx / speed;
}

State rk4_step(const State& s, const Model& m, double dt, std::size_t* floored)
{
    std::size_t fl = 0;
    auto eval = [&](const State& x) {
        RhsResult r = m.rhs(x);
        fl = std::max(fl, r.floored_cells);
        return std::move(r.derivative);
    };

    const State k1 = eval(s);
    State stage = s;
    add_scaled(stage, k1, 0.5 * dt);
    const State k2 = eval(stage);
    stage = s;
    add_scaled(stage, k2, 0.5 * dt);
    const State k3 = eval(stage);
    stage = s;
    add_scaled(stage, k3, dt);
    const State k4 = eval(stage);

    State next = s;
    add_scaled(next, k1, dt / 6.0);
    add_scaled(next, k2, dt / 3.0);
    add_scaled(next, k3, dt / 3.0);
    add_scaled(next, k4, dt / 6.0);
    if (floored) *floored = std::max(*floored, fl);
    return next;
}

void step(State& s, const Model& m, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("run.dt", fmt::format("dt must be > 0 (got {})", dt));
    const double bound = cfl_bound(s, m);
    if (dt > bound) throw CflError(dt, bound);
    State next = rk4_step(s, m, dt);
    require_finite(next, "step");
    s = std::move(next);
}

RunSummary simulate(State initial, const Model& m, const RunSettings& settings, const SnapshotSink& sink)
{
    if (!(settings.t_end > 0.0) || !std::isfinite(settings.t_end)) {
        throw ValidationError("run.t_end", fmt::format("must be > 0 (got {})", settings.t_end));
    }
    if (settings.snapshot_every == 0) throw ValidationError("run.output_stride", "must be >= 1");
    if (!(settings.cfl_fraction > 0.0 && settings.cfl_fraction <= 1.0)) {
        throw ValidationError("run.cfl", fmt::format("must be in (0, 1] (got {})", settings.cfl_fraction));
    }
    require_finite(initial, "initial state");

    RunSummary summary;
    const double bound = cfl_bound(initial, m);
    std::size_t steps = 0;
    double dt = settings.dt;
    if (dt <= 0.0) {
        const double target = settings.cfl_fraction * bound;
        steps = std::isfinite(target) ? static_cast<std::size_t>(std::ceil(settings.t_end / target)) : 1;
        steps = std::max<std::size_t>(steps, 1);
        // Whole number of output strides keeps the snapshot times uniform.
        const std::size_t every = settings.snapshot_every;
        if (steps >= every) steps = (steps + every - 1) / every * every;
        dt = settings.t_end / static_cast<double>(steps);
    } else {
        if (dt > bound) throw CflError(dt, bound);
        steps = static_cast<std::size_t>(std::llround(settings.t_end / dt));
        if (steps == 0 || std::abs(steps * dt - settings.t_end) > 1e-9 * settings.t_end) {
            throw ValidationError("run.dt", fmt::format("t_end = {} is not a whole number of steps of {}", settings.t_end, dt));
        }
    }
    summary.dt = dt;
    summary.steps = steps;

    State s = std::move(initial);
    summary.max_negative_cells = negative_density_cells(s);
    if (sink) sink(0, 0.0, s);
    for (std::size_t n = 1; n <= steps; ++n) {
        const double b = cfl_bound(s, m);
        if (dt > b) throw CflError(dt, b);
        try {
            s = rk4_step(s, m, dt, &summary.max_floored_cells);
            require_finite(s, "state");
        } catch (const NumericalError& e) {
            throw NumericalError(fmt::format("step {}: {}", n, e.what()));
        }
        summary.max_negative_cells = std::max(summary.max_negative_cells, negative_density_cells(s));
        if (sink && (n % settings.snapshot_every == 0 || n == steps)) sink(n, static_cast<double>(n) * dt, s);
    }
    return summary;
}

} // namespace efluid::hydro
