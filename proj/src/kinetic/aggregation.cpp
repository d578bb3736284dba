#include "efluid/kinetic/aggregation.hpp"

#include "efluid/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace efluid::kinetic {

using espace::ScalarField;
using espace::VectorField;

namespace {

void check_var(const AgentEnsemble& ens, std::size_t j)
{
    if (j >= ens.var_count()) {
        throw ValidationError(fmt::format("variable index {} out of range (ensemble has {})", j, ens.var_count()));
    }
}

} // namespace

ScalarField aggregate_density(const AgentEnsemble& ens, std::size_t j)
{
    check_var(ens, j);
    const auto& grid = ens.grid();
    ScalarField U(grid);
    for (const auto& p : ens.particles()) U[ens.node_of(p)] += p.vars[j];
    for (std::size_t n = 0; n < grid.size(); ++n) U[n] /= grid.node_volume(n);
    return U;
}

VectorField aggregate_impulse(const AgentEnsemble& ens, std::size_t j)
{
    check_var(ens, j);
    const auto& grid = ens.grid();
    VectorField P(grid);
    for (const auto& p : ens.particles()) {
        const std::size_t n = ens.node_of(p);
        for (int d = 0; d < grid.dim(); ++d) P.component(d)[n] += p.vars[j] * p.velocity[d];
    }
    for (int d = 0; d < grid.dim(); ++d) {
        auto c = P.component(d);
        for (std::size_t n = 0; n < grid.size(); ++n) c[n] /= grid.node_volume(n);
    }
    return P;
}

VelocityResult velocity_from_impulse(const ScalarField& U, const VectorField& P, double floor)
{
    espace::require_grid(U.grid(), P.grid(), "velocity_from_impulse");
    if (!(floor > 0.0)) throw ValidationError(fmt::format("velocity floor must be > 0 (got {})", floor));
    VelocityResult out{VectorField(U.grid()), 0};
    for (std::size_t n = 0; n < U.size(); ++n) {
        if (std::abs(U[n]) < floor) {
            ++out.floored_cells;
            continue;
        }
        for (int d = 0; d < P.dim(); ++d) out.v.component(d)[n] = P.component(d)[n] / U[n];
    }
    espace::require_finite(out.v, "velocity_from_impulse");
    return out;
}

double default_velocity_floor(const ScalarField& U)
{
    const double m = U.max_abs();
    return 1e-12 * (m > 0.0 ? m : 1.0);
}

double ensemble_moment(const AgentEnsemble& ens, std::size_t j, int m)
{
    if (m < 1) throw ValidationError(fmt::format("moment order must be >= 1 (got {})", m));
    const ScalarField U = aggregate_density(ens, j);
    double sum = 0.0;
    for (double u : U.values()) sum += std::pow(u, m);
    return sum / static_cast<double>(U.size());
}

double ensemble_correlation(const AgentEnsemble& ens, std::size_t j, std::size_t i)
{
    const ScalarField Uj = aggregate_density(ens, j);
    const ScalarField Ui = aggregate_density(ens, i);
    double sum = 0.0;
    for (std::size_t n = 0; n < Uj.size(); ++n) sum += Uj[n] * Ui[n];
    return sum / static_cast<double>(Uj.size());
}

} // namespace efluid::kinetic
