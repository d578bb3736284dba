#pragma once

#include "efluid/errors.hpp"
#include "efluid/hydro/model.hpp"

#include <functional>

namespace efluid::hydro {

/// Raised when dt exceeds the CFL bound; carries the bound.
class CflError : public ValidationError {
public:
    CflError(double dt, double bound);
    double bound() const noexcept { return bound_; }

private:
    double bound_;
};

/// 0.5 * min(dx) / wave_speed; +inf when nothing propagates.
double cfl_bound(const State& s, const Model& m);

/// One classic 4-stage Runge-Kutta step without CFL checks. Adds the number of
/// floored nodes seen by the four stages to `floored` when given.
State rk4_step(const State& s, const Model& m, double dt, std::size_t* floored = nullptr);

/// Checked step: dt > 0, dt <= cfl_bound, finite result.
void step(State& s, const Model& m, double dt);

struct RunSettings {
    /// Fixed step; <= 0 selects the largest step not above cfl_fraction * bound
    /// that divides t_end into a whole number of output strides.
    double dt = 0.0;
    double cfl_fraction = 1.0;
    double t_end = 0.0;
    /// Emit a snapshot every this many steps (the initial and final states are
    /// always emitted).
    std::size_t snapshot_every = 1;
};

struct RunSummary {
    std::size_t steps = 0;
    double dt = 0.0;
    /// Largest floored-node count over all RHS evaluations of one step.
    std::size_t max_floored_cells = 0;
    /// Largest count of U < 0 nodes seen at any step.
    std::size_t max_negative_cells = 0;
};

using SnapshotSink = std::function<void(std::size_t step, double t, const State& s)>;

/// Fixed-step RK4 from t = 0 to t_end. Snapshot times are step * dt.
/// Throws CflError before the first step, NumericalError naming the step index
/// on nonfinite states.
RunSummary simulate(State initial, const Model& m, const RunSettings& settings, const SnapshotSink& sink);

} // namespace efluid::hydro
