#pragma once

#include "efluid/espace/field.hpp"

namespace efluid::aggregate {

/// Domain integral of a density: rectangle rule on periodic grids (exact for
/// trigonometric polynomials resolved by the grid), trapezoid on reflective
/// grids. Weights equal SpaceGrid::node_volume.
double integrate_density(const espace::ScalarField& U);

/// Integral over [0, upper] of a 1D field, using the piecewise-linear
/// interpolant of the nodes (trapezoid; the last partial cell is cut at upper).
double integrate_window(const espace::ScalarField& U, double upper);

/// (2/k) sin(kX/2) cos(kX/2 - omega t): the integral of cos(kx - omega t) over [0, X].
double analytic_aggregate(double k, double omega, double X, double t);

} // namespace efluid::aggregate
