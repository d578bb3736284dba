#pragma once

#include "efluid/espace/grid.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace efluid::espace {

/// One real value per grid node.
class ScalarField {
public:
    explicit ScalarField(SpaceGrid grid, double fill = 0.0);
    ScalarField(SpaceGrid grid, std::vector<double> values);

    const SpaceGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator[](std::size_t n) { return values_[n]; }
    double operator[](std::size_t n) const { return values_[n]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    /// this += scale * other
    ScalarField& add_scaled(const ScalarField& other, double scale);
    ScalarField& operator*=(double scale);

    double max_abs() const noexcept;

private:
    SpaceGrid grid_;
    std::vector<double> values_;
};

/// `dim` real components per grid node, stored component-major.
class VectorField {
public:
    explicit VectorField(SpaceGrid grid, double fill = 0.0);

    const SpaceGrid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return grid_.dim(); }

    std::span<double> component(int d) noexcept { return comps_[d]; }
    std::span<const double> component(int d) const noexcept { return comps_[d]; }

    VectorField& add_scaled(const VectorField& other, double scale);
    VectorField& operator*=(double scale);

    /// Largest Euclidean norm over nodes.
    double max_norm() const noexcept;

private:
    SpaceGrid grid_;
    std::vector<std::vector<double>> comps_;
};

/// Throws ValidationError unless both fields live on `expected`.
void require_grid(const SpaceGrid& expected, const SpaceGrid& actual, std::string_view what);

/// Throws NumericalError naming the first nonfinite entry.
void require_finite(const ScalarField& f, std::string_view what);
void require_finite(const VectorField& v, std::string_view what);

} // namespace efluid::espace
