#include "efluid/hydro/generic.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace efluid::hydro {

using espace::ScalarField;
using espace::VectorField;

namespace {

constexpr double singular_det = 1e-12;

struct KindName {
    TermKind kind;
    const char* name;
};

constexpr KindName kind_names[] = {
    {TermKind::U, "U"},         {TermKind::dU_dt, "dU_dt"},   {TermKind::div_v, "div_v"},
    {TermKind::lap_U, "lap_U"}, {TermKind::v, "v"},           {TermKind::dv_dt, "dv_dt"},
    {TermKind::grad_U, "grad_U"}, {TermKind::rot_v, "rot_v"}, {TermKind::lap_v, "lap_v"},
};

std::string coupling_list(const RhsSpec& spec, TermKind kind)
{
    std::string out;
    for (const auto& t : spec.terms) {
        if (t.kind != kind) continue;
        if (!out.empty()) out += ", ";
        out += fmt::format("{}<-{} {}", t.target, t.source, t.coefficient);
    }
    return out;
}

} // namespace

Slot slot_of(TermKind k)
{
    switch (k) {
    case TermKind::U:
    case TermKind::dU_dt:
    case TermKind::div_v:
    case TermKind::lap_U: return Slot::q1;
    default: return Slot::q2;
    }
}

const char* to_string(TermKind k)
{
    for (const auto& kn : kind_names)
        if (kn.kind == k) return kn.name;
    return "?";
}

const char* to_string(Slot s)
{
    return s == Slot::q1 ? "Q1" : "Q2";
}

TermKind parse_term_kind(const std::string& text, const std::string& key)
{
    for (const auto& kn : kind_names)
        if (text == kn.name) return kn.kind;
    throw ValidationError(key, fmt::format("unknown operator kind '{}'", text));
}

Slot parse_slot(const std::string& text, const std::string& key)
{
    if (text == "Q1" || text == "q1") return Slot::q1;
    if (text == "Q2" || text == "q2") return Slot::q2;
    throw ValidationError(key, fmt::format("unknown slot '{}' (Q1 or Q2)", text));
}

void RhsSpec::validate(const std::vector<std::string>& fluids, int dim) const
{
    auto known = [&](const std::string& n) { return std::find(fluids.begin(), fluids.end(), n) != fluids.end(); };
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        const std::string key = fmt::format("model.term{}", i + 1);
        if (!known(t.target)) throw ValidationError(key, fmt::format("unknown target fluid '{}'", t.target));
        if (!known(t.source)) throw ValidationError(key, fmt::format("unknown source fluid '{}'", t.source));
        if (t.target == t.source) {
            throw ValidationError(key, fmt::format("fluid '{}' cannot source its own equations; Q terms must come from a conjugate fluid", t.target));
        }
        if (slot_of(t.kind) != t.slot) {
            throw ValidationError(key, fmt::format("{} is a {} operator and cannot appear in {}", to_string(t.kind),
                                                   slot_of(t.kind) == Slot::q1 ? "scalar (Q1)" : "vector (Q2)", to_string(t.slot)));
        }
        if (t.kind == TermKind::rot_v && dim != 3) {
            throw ValidationError(key, "rot_v needs a 3-dimensional space (space.dim = 3)");
        }
        if (!std::isfinite(t.coefficient)) throw ValidationError(key, "coefficient must be finite");
    }
}

RhsResult generic_rhs(const State& s, const RhsSpec& spec)
{
    if (s.empty()) return {};
    const auto& grid = s.front().U.grid();
    std::vector<std::string> names;
    for (const auto& f : s) {
        espace::require_grid(grid, f.U.grid(), "generic_rhs");
        espace::require_grid(grid, f.v.grid(), "generic_rhs");
        names.push_back(f.name);
    }
    spec.validate(names, grid.dim());

    const std::size_t nf = s.size();
    const std::size_t np = grid.size();
    const int dim = grid.dim();

    RhsResult out;
    std::vector<VectorField> q2;
    for (const auto& f : s) {
        ScalarField dU = espace::divergence(espace::scale_pointwise(f.U, f.v));
        dU *= -1.0;
        VectorField dv = espace::advective_derivative(f.v, f.v);
        dv *= -1.0;
        out.derivative.push_back({f.name, std::move(dU), std::move(dv)});
        q2.emplace_back(grid);
    }

    Eigen::MatrixXd dU_coupling = Eigen::MatrixXd::Zero(nf, nf);
    Eigen::MatrixXd dv_coupling = Eigen::MatrixXd::Zero(nf, nf);
    bool implicit_U = false, implicit_v = false;

    for (const auto& t : spec.terms) {
        const std::size_t ti = find_fluid(s, t.target);
        const std::size_t si = find_fluid(s, t.source);
        const FluidState& src = s[si];
        auto& dU = out.derivative[ti].U;
        switch (t.kind) {
        case TermKind::U: dU.add_scaled(src.U, t.coefficient); break;
        case TermKind::div_v: dU.add_scaled(espace::divergence(src.v), t.coefficient); break;
        case TermKind::lap_U: dU.add_scaled(espace::laplacian(src.U), t.coefficient); break;
        case TermKind::dU_dt:
            dU_coupling(ti, si) += t.coefficient;
            implicit_U = true;
            break;
        case TermKind::v: q2[ti].add_scaled(src.v, t.coefficient); break;
        case TermKind::grad_U: q2[ti].add_scaled(espace::gradient(src.U), t.coefficient); break;
        case TermKind::rot_v: q2[ti].add_scaled(espace::curl(src.v), t.coefficient); break;
        case TermKind::lap_v: q2[ti].add_scaled(espace::vector_laplacian(src.v), t.coefficient); break;
        case TermKind::dv_dt:
            dv_coupling(ti, si) += t.coefficient;
            implicit_v = true;
            break;
        }
    }

    // Q2 enters divided by U; floored nodes get no Q2 contribution.
    std::vector<std::vector<double>> inv_U(nf, std::vector<double>(np, 0.0));
    for (std::size_t i = 0; i < nf; ++i) {
        const auto& U = s[i].U;
        const double floor = density_floor(U);
        auto& dv = out.derivative[i].v;
        for (std::size_t n = 0; n < np; ++n) {
            if (std::abs(U[n]) < floor) {
                ++out.floored_cells;
                continue;
            }
            inv_U[i][n] = 1.0 / U[n];
            for (int d = 0; d < dim; ++d) dv.component(d)[n] += q2[i].component(d)[n] * inv_U[i][n];
        }
    }

    if (implicit_U) {
        const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(nf, nf) - dU_coupling;
        const double det = A.determinant();
        if (!(std::abs(det) >= singular_det)) {
            throw NumericalError(fmt::format("singular dU_dt coupling (det = {:.3g}); coefficients: {}", det,
                                             coupling_list(spec, TermKind::dU_dt)));
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        Eigen::VectorXd e(nf);
        for (std::size_t n = 0; n < np; ++n) {
            for (std::size_t i = 0; i < nf; ++i) e(i) = out.derivative[i].U[n];
            const Eigen::VectorXd x = lu.solve(e);
            for (std::size_t i = 0; i < nf; ++i) out.derivative[i].U[n] = x(i);
        }
    }

    if (implicit_v) {
        Eigen::MatrixXd A(nf, nf);
        Eigen::VectorXd e(nf);
        for (std::size_t n = 0; n < np; ++n) {
            for (std::size_t i = 0; i < nf; ++i)
                for (std::size_t j = 0; j < nf; ++j) A(i, j) = (i == j ? 1.0 : 0.0) - dv_coupling(i, j) * inv_U[i][n];
            const double det = A.determinant();
            if (!(std::abs(det) >= singular_det)) {
                throw NumericalError(fmt::format("singular dv_dt coupling at point {} (det = {:.3g}); coefficients: {}", n,
                                                 det, coupling_list(spec, TermKind::dv_dt)));
            }
            const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
            for (int d = 0; d < dim; ++d) {
                for (std::size_t i = 0; i < nf; ++i) e(i) = out.derivative[i].v.component(d)[n];
                const Eigen::VectorXd x = lu.solve(e);
                for (std::size_t i = 0; i < nf; ++i) out.derivative[i].v.component(d)[n] = x(i);
            }
        }
    }

    require_finite(out.derivative, "generic_rhs");
    return out;
}

double GenericModel::wave_speed(const State& s) const
{
    double vmax = 0.0;
    double A = 0.0;
    double B = 0.0;
    for (const auto& f : s) {
        vmax = std::max(vmax, f.v.max_norm());
        double div_sum = 0.0, grad_sum = 0.0;
        for (const auto& t : spec_.terms) {
            if (t.target != f.name) continue;
            if (t.kind == TermKind::div_v) div_sum += std::abs(t.coefficient);
            if (t.kind == TermKind::grad_U) grad_sum += std::abs(t.coefficient);
        }
        double umin = std::numeric_limits<double>::infinity();
        for (double u : f.U.values()) umin = std::min(umin, std::abs(u));
        umin = std::max(umin, density_floor(f.U));
        A = std::max(A, f.U.max_abs() + div_sum);
        B = std::max(B, grad_sum / umin);
    }
    return vmax + std::sqrt(A * B);
}

} // namespace efluid::hydro
