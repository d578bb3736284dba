#pragma once

#include "efluid/hydro/conjugate.hpp"

namespace efluid::linear {

struct LinearDerivatives {
    espace::ScalarField dq_i;
    espace::ScalarField dq_c;
    espace::VectorField dv_i;
    espace::VectorField dv_c;
};

/**
 * Perturbation equations about constant backgrounds U_I0, U_C0 at rest:
 *
 *   dq_I/dt = -U_I0 div v_I + alpha_C div v_C
 *   dq_C/dt = -U_C0 div v_C + alpha_I div v_I
 *   dv_I/dt = (beta_C / U_I0) grad q_C
 *   dv_C/dt = (beta_I / U_C0) grad q_I
 */
LinearDerivatives linear_rhs(const espace::ScalarField& q_i, const espace::ScalarField& q_c, const espace::VectorField& v_i,
                             const espace::VectorField& v_c, const hydro::ConjugateParams& p);

/// linear_rhs as a Model; state layout {I, C} with U holding the perturbation q.
class LinearModel final : public hydro::Model {
public:
    explicit LinearModel(hydro::ConjugateParams p) : params_(p) {}
    hydro::RhsResult rhs(const hydro::State& s) const override;
    double wave_speed(const hydro::State& s) const override;

private:
    hydro::ConjugateParams params_;
};

} // namespace efluid::linear
