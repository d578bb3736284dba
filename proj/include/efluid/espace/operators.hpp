#pragma once

#include "efluid/espace/field.hpp"

namespace efluid::espace {

/// How a quantity extends across a reflective wall: scalars and tangential
/// vector components are mirrored (even), normal components flip sign (odd).
/// Odd fields vanish on the wall, so their wall values are read as zero.
/// Ignored on periodic grids.
enum class Parity { even, odd };

/// Centred first difference along `axis`.
std::vector<double> partial(const SpaceGrid& grid, std::span<const double> f, int axis, Parity parity);

/// Centred 3-point second difference along `axis`.
std::vector<double> second_partial(const SpaceGrid& grid, std::span<const double> f, int axis, Parity parity);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);

/// Component-wise Laplacian; component d uses odd parity along axis d.
VectorField vector_laplacian(const VectorField& v);

/// Requires dim = 3; otherwise ValidationError naming the rot_v config key.
VectorField curl(const VectorField& v);

/// (a . grad) b, with b treated as a velocity-like field.
VectorField advective_derivative(const VectorField& a, const VectorField& b);

/// Pointwise product s * v.
VectorField scale_pointwise(const ScalarField& s, const VectorField& v);

} // namespace efluid::espace
