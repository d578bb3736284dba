#include "efluid/hydro/conjugate.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/operators.hpp"
#include "efluid/linear/biwave.hpp"

#include <cmath>
#include <fmt/format.h>

namespace efluid::hydro {

using espace::ScalarField;
using espace::VectorField;

ConjugateParams ConjugateParams::make(double alpha_i, double alpha_c, double beta_i, double beta_c, double u_i0,
                                      double u_c0)
{
    auto need = [](bool ok, const char* key, const char* rule, double value) {
        if (!ok) throw ValidationError(key, fmt::format("must satisfy {} (got {})", rule, value));
    };
    need(std::isfinite(alpha_i) && alpha_i > 0.0, "model.alpha_i", "alpha_I > 0", alpha_i);
    need(std::isfinite(alpha_c) && alpha_c > 0.0, "model.alpha_c", "alpha_C > 0", alpha_c);
    need(std::isfinite(beta_i) && beta_i > 0.0, "model.beta_i", "beta_I > 0", beta_i);
    need(std::isfinite(beta_c) && beta_c < 0.0, "model.beta_c", "beta_C < 0", beta_c);
    need(std::isfinite(u_i0) && u_i0 > 0.0, "model.u_i0", "U_I0 > 0", u_i0);
    need(std::isfinite(u_c0) && u_c0 > 0.0, "model.u_c0", "U_C0 > 0", u_c0);
    return ConjugateParams{alpha_i, alpha_c, beta_i, beta_c, u_i0, u_c0};
}

ScalarField cost_of_investment(const InterestRateInputs& in)
{
    espace::require_grid(in.ir.grid(), in.funds.grid(), "cost_of_investment");
    ScalarField out(in.ir.grid());
    for (std::size_t n = 0; n < out.size(); ++n) {
        if (in.funds[n] < 0.0) throw ValidationError(fmt::format("cost_of_investment: funds U_F < 0 at point {}", n));
        out[n] = in.ir[n] * in.funds[n];
    }
    espace::require_finite(out, "cost_of_investment");
    return out;
}

namespace {

// -(v.grad)v + coeff * grad(source) / U, floored where |U| < floor.
VectorField motion_rhs(const FluidState& f, const ScalarField& source, double coeff, std::size_t& floored)
{
    VectorField dv = espace::advective_derivative(f.v, f.v);
    dv *= -1.0;
    const VectorField g = espace::gradient(source);
    const double floor = density_floor(f.U);
    for (std::size_t n = 0; n < f.U.size(); ++n) {
        if (std::abs(f.U[n]) < floor) {
            ++floored;
            continue;
        }
        const double scale = coeff / f.U[n];
        for (int d = 0; d < dv.dim(); ++d) dv.component(d)[n] += scale * g.component(d)[n];
    }
    return dv;
}

// -div(v U) + coeff * div(source_v)
ScalarField continuity_rhs(const FluidState& f, const VectorField& source_v, double coeff)
{
    ScalarField dU = espace::divergence(espace::scale_pointwise(f.U, f.v));
    dU *= -1.0;
    dU.add_scaled(espace::divergence(source_v), coeff);
    return dU;
}

} // namespace

RhsResult conjugate_rhs(const FluidState& I, const FluidState& C, const ConjugateParams& p)
{
    const auto& grid = I.U.grid();
    espace::require_grid(grid, I.v.grid(), "conjugate_rhs (v_I)");
    espace::require_grid(grid, C.U.grid(), "conjugate_rhs (U_C)");
    espace::require_grid(grid, C.v.grid(), "conjugate_rhs (v_C)");

    RhsResult out;
    ScalarField dUI = continuity_rhs(I, C.v, p.alpha_c);
    ScalarField dUC = continuity_rhs(C, I.v, p.alpha_i);
    VectorField dvI = motion_rhs(I, C.U, p.beta_c, out.floored_cells);
    VectorField dvC = motion_rhs(C, I.U, p.beta_i, out.floored_cells);
    out.derivative.push_back({I.name, std::move(dUI), std::move(dvI)});
    out.derivative.push_back({C.name, std::move(dUC), std::move(dvC)});
    require_finite(out.derivative, "conjugate_rhs");
    return out;
}

RhsResult ConjugateModel::rhs(const State& s) const
{
    if (s.size() != 2) throw ValidationError("conjugate model needs exactly two fluids (I, C)");
    return conjugate_rhs(s[0], s[1], params_);
}

double ConjugateModel::wave_speed(const State& s) const
{
    double vmax = 0.0;
    for (const auto& f : s) vmax = std::max(vmax, f.v.max_norm());
    return vmax + linear::max_signal_speed(linear::biwave_coeffs(params_));
}

} // namespace efluid::hydro
