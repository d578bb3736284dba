#include "efluid/aggregate/quadrature.hpp"

#include "efluid/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace efluid::aggregate {

double integrate_density(const espace::ScalarField& U)
{
    const auto& grid = U.grid();
    double sum = 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n) sum += grid.node_volume(n) * U[n];
    return sum;
}

double integrate_window(const espace::ScalarField& U, double upper)
{
    const auto& grid = U.grid();
    if (grid.dim() != 1) throw ValidationError("output.aggregate_window", "window integration is one-dimensional");
    const double X = grid.extent(0);
    if (!(upper > 0.0 && upper <= X * (1.0 + 1e-12))) {
        throw ValidationError("output.aggregate_window", fmt::format("must be in (0, {}] (got {})", X, upper));
    }
    if (upper >= X) return integrate_density(U);

    const double dx = grid.spacing(0);
    const int full = static_cast<int>(std::floor(upper / dx));
    double sum = 0.0;
    for (int i = 0; i < full; ++i) sum += 0.5 * dx * (U[i] + U[i + 1]);
    const double rest = upper - full * dx;
    if (rest > 0.0) {
        const double f0 = U[full];
        const double f1 = U[(full + 1) % grid.points(0)];
        const double fu = f0 + (f1 - f0) * rest / dx;
        sum += 0.5 * rest * (f0 + fu);
    }
    return sum;
}

double analytic_aggregate(double k, double omega, double X, double t)
{
    if (k == 0.0) throw ValidationError("analytic_aggregate: k must be nonzero");
    return 2.0 / k * std::sin(0.5 * k * X) * std::cos(0.5 * k * X - omega * t);
}

} // namespace efluid::aggregate
