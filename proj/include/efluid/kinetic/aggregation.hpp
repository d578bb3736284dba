#pragma once

#include "efluid/espace/field.hpp"
#include "efluid/kinetic/ensemble.hpp"

namespace efluid::kinetic {

/// Macro density U_j(x): sum of u_j over the particles deposited on each node,
/// divided by the node's control volume, so that integrating the field
/// returns the plain sum. Summation follows particle order.
espace::ScalarField aggregate_density(const AgentEnsemble& ens, std::size_t j);

/// Impulse density P_j(x) = sum u_j * v per node, per unit control volume.
espace::VectorField aggregate_impulse(const AgentEnsemble& ens, std::size_t j);

struct VelocityResult {
    espace::VectorField v;
    std::size_t floored_cells = 0;
};

/// v = P / U where |U| >= floor, v = 0 elsewhere (counted in floored_cells).
VelocityResult velocity_from_impulse(const espace::ScalarField& U, const espace::VectorField& P, double floor);

/// 1e-12 * max|U|, or 1e-12 for an all-zero field.
double default_velocity_floor(const espace::ScalarField& U);

/// Mean over grid nodes of U_j(x)^m.
double ensemble_moment(const AgentEnsemble& ens, std::size_t j, int m);

/// Mean over grid nodes of U_j(x) * U_i(x).
double ensemble_correlation(const AgentEnsemble& ens, std::size_t j, std::size_t i);

} // namespace efluid::kinetic
