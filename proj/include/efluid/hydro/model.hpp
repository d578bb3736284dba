#pragma once

#include "efluid/espace/field.hpp"

#include <string>
#include <vector>

namespace efluid::hydro {

/// One e-fluid: density U and velocity v on a shared grid.
struct FluidState {
    std::string name;
    espace::ScalarField U;
    espace::VectorField v;
};

/// A set of coupled fluids. Time derivatives use the same layout.
using State = std::vector<FluidState>;

/// dst += scale * src, fluid by fluid.
void add_scaled(State& dst, const State& src, double scale);

/// Zero-valued state with the same names and grid as `like`.
State zeros_like(const State& like);

/// Index of a fluid by name; ValidationError if absent.
std::size_t find_fluid(const State& s, const std::string& name);

void require_finite(const State& s, const std::string& what);

/// Fluid/field count of nodes with U < 0.
std::size_t negative_density_cells(const State& s);

/// Density floor for divisions by U: 1e-12 * max|U| (1e-12 for a zero field).
double density_floor(const espace::ScalarField& U);

struct RhsResult {
    State derivative;
    /// Nodes where a division by U was suppressed by the floor.
    std::size_t floored_cells = 0;
};

/// Right-hand side of a coupled e-fluid system.
class Model {
public:
    virtual ~Model() = default;
    virtual RhsResult rhs(const State& s) const = 0;
    /// Upper estimate of the fastest signal speed for the CFL bound.
    virtual double wave_speed(const State& s) const = 0;
};

} // namespace efluid::hydro
