#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace efluid::espace {

enum class Boundary { periodic, reflective };

Boundary parse_boundary(const std::string& text);
const char* to_string(Boundary b);

using Index3 = std::array<int, 3>;

/**
 * Uniform grid over the box [0, X_1] x ... x [0, X_dim].
 *
 * Periodic axes carry `cells` nodes at x_i = i*dx (x = X is identified with
 * x = 0). Reflective axes are vertex-centred: `cells + 1` nodes including both
 * walls. Flat indices run with axis 0 fastest.
 */
class SpaceGrid {
public:
    SpaceGrid(int dim, std::array<double, 3> extent, std::array<int, 3> cells, Boundary boundary);

    static SpaceGrid line(double extent, int cells, Boundary boundary);

    int dim() const noexcept { return dim_; }
    Boundary boundary() const noexcept { return boundary_; }
    double extent(int axis) const { return extent_[axis]; }
    int cells(int axis) const { return cells_[axis]; }
    double spacing(int axis) const { return extent_[axis] / cells_[axis]; }

    /// Node count along one axis (1 for unused axes).
    int points(int axis) const { return points_[axis]; }
    std::size_t size() const noexcept { return size_; }

    /// Coordinate of node i along an axis.
    double coord(int axis, int i) const { return i * spacing(axis); }

    std::size_t flat(const Index3& ijk) const noexcept {
        return static_cast<std::size_t>(ijk[0])
            + static_cast<std::size_t>(points_[0]) * (ijk[1] + static_cast<std::size_t>(points_[1]) * ijk[2]);
    }
    Index3 unflat(std::size_t n) const noexcept;

    /// Stride between neighbouring nodes along an axis in flat indexing.
    std::size_t stride(int axis) const noexcept;

    /// Quadrature weight / control volume of a node: product of dx per axis,
    /// halved on reflective wall nodes.
    double node_volume(std::size_t n) const;

    bool operator==(const SpaceGrid& other) const = default;

private:
    int dim_;
    std::array<double, 3> extent_;
    std::array<int, 3> cells_;
    Boundary boundary_;
    std::array<int, 3> points_;
    std::size_t size_;
};

} // namespace efluid::espace
