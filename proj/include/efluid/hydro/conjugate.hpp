#pragma once

#include "efluid/hydro/model.hpp"

namespace efluid::hydro {

/**
 * Coefficients of the Demand-on-Investment (I) / Cost-of-Investment (C) pair:
 *
 *   dU_I/dt + div(v_I U_I) = alpha_C div v_C
 *   dU_C/dt + div(v_C U_C) = alpha_I div v_I
 *   U_I (dv_I/dt + (v_I.grad) v_I) = beta_C grad U_C
 *   U_C (dv_C/dt + (v_C.grad) v_C) = beta_I grad U_I
 *
 * with alpha_I, alpha_C, beta_I > 0 and beta_C < 0. u_i0, u_c0 are the
 * background densities used by the linear theory.
 */
struct ConjugateParams {
    double alpha_i;
    double alpha_c;
    double beta_i;
    double beta_c;
    double u_i0 = 1.0;
    double u_c0 = 1.0;

    /// Validates sign constraints; errors name the `model.*` key.
    static ConjugateParams make(double alpha_i, double alpha_c, double beta_i, double beta_c, double u_i0 = 1.0,
                                double u_c0 = 1.0);
};

/// Interest-rate proxy inputs: rate per period and funds (U_F >= 0).
struct InterestRateInputs {
    espace::ScalarField ir;
    espace::ScalarField funds;
};

/// U_C = ir * U_F pointwise.
espace::ScalarField cost_of_investment(const InterestRateInputs& in);

/// Time derivatives of (I, C) in that order; both fluids must share a grid.
RhsResult conjugate_rhs(const FluidState& I, const FluidState& C, const ConjugateParams& p);

/// Model wrapper over conjugate_rhs; state layout is {I, C}.
class ConjugateModel final : public Model {
public:
    explicit ConjugateModel(ConjugateParams p) : params_(p) {}

    RhsResult rhs(const State& s) const override;
    /// max|v| + sqrt(max |omega^2/k^2|) from the linear dispersion relation.
    double wave_speed(const State& s) const override;

    const ConjugateParams& params() const noexcept { return params_; }

private:
    ConjugateParams params_;
};

} // namespace efluid::hydro
