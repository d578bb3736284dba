#include "efluid/espace/grid.hpp"

#include "efluid/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace efluid::espace {

Boundary parse_boundary(const std::string& text)
{
    if (text == "periodic") return Boundary::periodic;
    if (text == "reflective") return Boundary::reflective;
    throw ValidationError("space.boundary", fmt::format("unknown boundary rule '{}'", text));
}

const char* to_string(Boundary b)
{
    return b == Boundary::periodic ? "periodic" : "reflective";
}

SpaceGrid::SpaceGrid(int dim, std::array<double, 3> extent, std::array<int, 3> cells, Boundary boundary)
    : dim_(dim), extent_(extent), cells_(cells), boundary_(boundary), points_{1, 1, 1}, size_(1)
{
    if (dim < 1 || dim > 3) {
        throw ValidationError("space.dim", fmt::format("must be 1, 2 or 3 (got {})", dim));
    }
    for (int d = 0; d < 3; ++d) {
        if (d >= dim) {
            extent_[d] = 1.0;
            cells_[d] = 1;
            continue;
        }
        if (!(std::isfinite(extent[d]) && extent[d] > 0.0)) {
            throw ValidationError("space.extent", fmt::format("axis {} extent must be finite and > 0", d + 1));
        }
        if (cells[d] < 4) {
            throw ValidationError("space.cells", fmt::format("axis {} needs at least 4 cells (got {})", d + 1, cells[d]));
        }
        points_[d] = boundary == Boundary::periodic ? cells[d] : cells[d] + 1;
        size_ *= static_cast<std::size_t>(points_[d]);
    }
}

SpaceGrid SpaceGrid::line(double extent, int cells, Boundary boundary)
{
    return SpaceGrid(1, {extent, 1.0, 1.0}, {cells, 1, 1}, boundary);
}

Index3 SpaceGrid::unflat(std::size_t n) const noexcept
{
    Index3 ijk{0, 0, 0};
    ijk[0] = static_cast<int>(n % points_[0]);
    n /= points_[0];
    ijk[1] = static_cast<int>(n % points_[1]);
    ijk[2] = static_cast<int>(n / points_[1]);
    return ijk;
}

std::size_t SpaceGrid::stride(int axis) const noexcept
{
    std::size_t s = 1;
    for (int d = 0; d < axis; ++d) s *= static_cast<std::size_t>(points_[d]);
    return s;
}

double SpaceGrid::node_volume(std::size_t n) const
{
    const Index3 ijk = unflat(n);
    double vol = 1.0;
    for (int d = 0; d < dim_; ++d) {
        double w = spacing(d);
        if (boundary_ == Boundary::reflective && (ijk[d] == 0 || ijk[d] == cells_[d])) w *= 0.5;
        vol *= w;
    }
    return vol;
}

} // namespace efluid::espace
