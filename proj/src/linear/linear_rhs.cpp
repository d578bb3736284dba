#include "efluid/linear/linear_rhs.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/operators.hpp"
#include "efluid/linear/biwave.hpp"

namespace efluid::linear {

using espace::ScalarField;
using espace::VectorField;

LinearDerivatives linear_rhs(const ScalarField& q_i, const ScalarField& q_c, const VectorField& v_i, const VectorField& v_c,
                             const hydro::ConjugateParams& p)
{
    const auto& grid = q_i.grid();
    espace::require_grid(grid, q_c.grid(), "linear_rhs (q_C)");
    espace::require_grid(grid, v_i.grid(), "linear_rhs (v_I)");
    espace::require_grid(grid, v_c.grid(), "linear_rhs (v_C)");

    const ScalarField div_i = espace::divergence(v_i);
    const ScalarField div_c = espace::divergence(v_c);

    LinearDerivatives out{ScalarField(grid), ScalarField(grid), espace::gradient(q_c), espace::gradient(q_i)};
    out.dq_i.add_scaled(div_i, -p.u_i0).add_scaled(div_c, p.alpha_c);
    out.dq_c.add_scaled(div_c, -p.u_c0).add_scaled(div_i, p.alpha_i);
    out.dv_i *= p.beta_c / p.u_i0;
    out.dv_c *= p.beta_i / p.u_c0;
    return out;
}

hydro::RhsResult LinearModel::rhs(const hydro::State& s) const
{
    if (s.size() != 2) throw ValidationError("linear model needs exactly two fluids (I, C)");
    LinearDerivatives d = linear_rhs(s[0].U, s[1].U, s[0].v, s[1].v, params_);
    hydro::RhsResult out;
    out.derivative.push_back({s[0].name, std::move(d.dq_i), std::move(d.dv_i)});
    out.derivative.push_back({s[1].name, std::move(d.dq_c), std::move(d.dv_c)});
    hydro::require_finite(out.derivative, "linear_rhs");
    return out;
}

double LinearModel::wave_speed(const hydro::State&) const
{
    return max_signal_speed(biwave_coeffs(params_));
}

} // namespace efluid::linear
