#include "efluid/espace/field.hpp"

#include "efluid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace efluid::espace {

ScalarField::ScalarField(SpaceGrid grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(SpaceGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size()) {
        throw ValidationError(fmt::format("scalar field has {} entries, grid has {} points", values_.size(), grid_.size()));
    }
}

ScalarField& ScalarField::add_scaled(const ScalarField& other, double scale)
{
    require_grid(grid_, other.grid_, "add_scaled");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += scale * other.values_[n];
    return *this;
}

ScalarField& ScalarField::operator*=(double scale)
{
    for (double& x : values_) x *= scale;
    return *this;
}

double ScalarField::max_abs() const noexcept
{
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

VectorField::VectorField(SpaceGrid grid, double fill)
    : grid_(grid), comps_(static_cast<std::size_t>(grid.dim()), std::vector<double>(grid.size(), fill))
{
}

VectorField& VectorField::add_scaled(const VectorField& other, double scale)
{
    require_grid(grid_, other.grid_, "add_scaled");
    for (int d = 0; d < dim(); ++d) {
        auto& dst = comps_[d];
        const auto& src = other.comps_[d];
        for (std::size_t n = 0; n < dst.size(); ++n) dst[n] += scale * src[n];
    }
    return *this;
}

VectorField& VectorField::operator*=(double scale)
{
    for (auto& c : comps_)
        for (double& x : c) x *= scale;
    return *this;
}

double VectorField::max_norm() const noexcept
{
    double m = 0.0;
    for (std::size_t n = 0; n < grid_.size(); ++n) {
        double s = 0.0;
        for (const auto& c : comps_) s += c[n] * c[n];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

void require_grid(const SpaceGrid& expected, const SpaceGrid& actual, std::string_view what)
{
    if (!(expected == actual)) {
        throw ValidationError(fmt::format("{}: field grid does not match ({} vs {} points)", what, actual.size(), expected.size()));
    }
}

namespace {

void check_span(std::span<const double> xs, std::string_view what, int comp)
{
    for (std::size_t n = 0; n < xs.size(); ++n) {
        if (!std::isfinite(xs[n])) {
            if (comp < 0) throw NumericalError(fmt::format("{}: nonfinite value at point {}", what, n));
            throw NumericalError(fmt::format("{}: nonfinite value in component {} at point {}", what, comp + 1, n));
        }
    }
}

} // namespace

void require_finite(const ScalarField& f, std::string_view what)
{
    check_span(f.values(), what, -1);
}

void require_finite(const VectorField& v, std::string_view what)
{
    for (int d = 0; d < v.dim(); ++d) check_span(v.component(d), what, d);
}

} // namespace efluid::espace
