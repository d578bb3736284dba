#pragma once

#include "efluid/hydro/model.hpp"

#include <string>
#include <vector>

namespace efluid::hydro {

/// Which right-hand side a term feeds: Q1 (continuity) or Q2 (motion).
enum class Slot { q1, q2 };

/// Linear operators on a conjugate fluid. Q1 takes the scalar kinds
/// {U, dU_dt, div_v, lap_U}; Q2 the vector kinds {v, dv_dt, grad_U, rot_v, lap_v}.
enum class TermKind { U, dU_dt, div_v, lap_U, v, dv_dt, grad_U, rot_v, lap_v };

Slot slot_of(TermKind k);
const char* to_string(TermKind k);
const char* to_string(Slot s);
TermKind parse_term_kind(const std::string& text, const std::string& key);
Slot parse_slot(const std::string& text, const std::string& key);

/// `coefficient * kind(source)` added to `slot` of fluid `target`.
struct OperatorTerm {
    std::string target;
    Slot slot;
    TermKind kind;
    double coefficient;
    std::string source;
};

/// Collection of Q terms for a set of named fluids.
struct RhsSpec {
    std::vector<OperatorTerm> terms;

    /// Rejects unknown fluids, Q1/Q2 kind mismatches, self-sourced terms and
    /// rot_v on grids with dim != 3.
    void validate(const std::vector<std::string>& fluids, int dim) const;
};

/**
 * dU_i/dt = -div(v_i U_i) + sum of Q1 terms
 * dv_i/dt = -(v_i.grad) v_i + (sum of Q2 terms) / U_i
 *
 * dU_dt / dv_dt terms make the time derivatives implicit; they are resolved
 * exactly by a small dense solve per grid node. |det| < 1e-12 is reported as
 * a NumericalError naming the coupling coefficients.
 */
RhsResult generic_rhs(const State& s, const RhsSpec& spec);

class GenericModel final : public Model {
public:
    explicit GenericModel(RhsSpec spec) : spec_(std::move(spec)) {}

    RhsResult rhs(const State& s) const override { return generic_rhs(s, spec_); }

    /// max|v| + sqrt(A B) with A the largest max|U_i| + sum|div_v coefficients|
    /// and B the largest sum|grad_U coefficients| / min|U_i|.
    double wave_speed(const State& s) const override;

    const RhsSpec& spec() const noexcept { return spec_; }

private:
    RhsSpec spec_;
};

} // namespace efluid::hydro
