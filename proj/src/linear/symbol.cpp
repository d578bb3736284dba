#include "efluid/linear/symbol.hpp"

#include "efluid/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace efluid::linear {

using cplx = std::complex<double>;
using hydro::TermKind;

namespace {

std::size_t index_of(const std::vector<std::string>& names, const std::string& n)
{
    const auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw ValidationError(fmt::format("unknown fluid '{}'", n));
    return static_cast<std::size_t>(it - names.begin());
}

// Monic polynomial coefficients (highest power first) with the given roots.
std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots)
{
    std::vector<cplx> c{1.0};
    for (const auto& r : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

} // namespace

SymbolAnalysis analyze_symbol(const hydro::RhsSpec& spec, const std::vector<std::string>& fluids,
                              const std::vector<double>& backgrounds, double k)
{
    if (fluids.size() != backgrounds.size()) throw ValidationError("analyze_symbol: one background per fluid");
    if (k == 0.0) throw ValidationError("analyze_symbol: k must be nonzero");
    spec.validate(fluids, 3);

    const std::size_t nf = fluids.size();
    const std::size_t n = 4 * nf;
    const cplx ik(0.0, k);
    const double k2 = k * k;
    auto q = [](std::size_t f) { return 4 * f; };
    auto v = [](std::size_t f, int m) { return 4 * f + 1 + static_cast<std::size_t>(m); };

    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t f = 0; f < nf; ++f) L(q(f), v(f, 0)) += -backgrounds[f] * ik;

    for (const auto& t : spec.terms) {
        const std::size_t ti = index_of(fluids, t.target);
        const std::size_t si = index_of(fluids, t.source);
        const double c = t.coefficient;
        const double cu = c / backgrounds[ti];
        switch (t.kind) {
        case TermKind::U: L(q(ti), q(si)) += c; break;
        case TermKind::dU_dt: T(q(ti), q(si)) += c; break;
        case TermKind::div_v: L(q(ti), v(si, 0)) += c * ik; break;
        case TermKind::lap_U: L(q(ti), q(si)) += -c * k2; break;
        case TermKind::v:
            for (int m = 0; m < 3; ++m) L(v(ti, m), v(si, m)) += cu;
            break;
        case TermKind::dv_dt:
            for (int m = 0; m < 3; ++m) T(v(ti, m), v(si, m)) += cu;
            break;
        case TermKind::grad_U: L(v(ti, 0), q(si)) += cu * ik; break;
        case TermKind::rot_v:
            // i k x v with k along x: (0, -i k v_z, i k v_y)
            L(v(ti, 1), v(si, 2)) += -cu * ik;
            L(v(ti, 2), v(si, 1)) += cu * ik;
            break;
        case TermKind::lap_v:
            for (int m = 0; m < 3; ++m) L(v(ti, m), v(si, m)) += -cu * k2;
            break;
        }
    }

    const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n) - T;
    const cplx det = A.determinant();
    if (!(std::abs(det) >= 1e-12)) {
        throw NumericalError(fmt::format("singular time-derivative coupling in linearized system (|det| = {:.3g})", std::abs(det)));
    }
    const Eigen::MatrixXcd M = A.partialPivLu().solve(L);

    // d/dt X = M X with X ~ exp(-i omega t): omega = i * lambda.
    SymbolAnalysis out{};
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> full(M, false);
    for (Eigen::Index j = 0; j < full.eigenvalues().size(); ++j) out.omegas.push_back(cplx(0.0, 1.0) * full.eigenvalues()(j));

    std::vector<Eigen::Index> lon;
    for (std::size_t f = 0; f < nf; ++f) {
        lon.push_back(static_cast<Eigen::Index>(q(f)));
        lon.push_back(static_cast<Eigen::Index>(v(f, 0)));
    }
    Eigen::MatrixXcd Ml(lon.size(), lon.size());
    for (std::size_t r = 0; r < lon.size(); ++r)
        for (std::size_t c = 0; c < lon.size(); ++c) Ml(r, c) = M(lon[r], lon[c]);
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> lsolve(Ml, false);
    std::vector<cplx> lroots;
    for (Eigen::Index j = 0; j < lsolve.eigenvalues().size(); ++j) lroots.push_back(cplx(0.0, 1.0) * lsolve.eigenvalues()(j));
    const auto poly = poly_from_roots(lroots);
    const std::size_t deg = lroots.size();
    out.a = deg >= 2 ? -poly[2].real() / k2 : 0.0;
    out.b = deg >= 4 ? poly[4].real() / (k2 * k2) : 0.0;

    double scale = 1.0;
    out.max_growth = -std::numeric_limits<double>::infinity();
    for (const auto& w : out.omegas) {
        scale = std::max(scale, std::abs(w));
        out.max_growth = std::max(out.max_growth, w.imag());
    }
    // Eigenvalues of an m-fold defective root are only accurate to eps^(1/m);
    // four-fold roots (a = b = 0) leave ~1e-4 of spurious imaginary part.
    const double tol = 1e-3 * scale;
    if (out.max_growth > tol) {
        out.regime = Regime::growing_modes;
    } else {
        out.max_growth = 0.0;
        std::vector<double> speeds;
        bool damped = false;
        for (const auto& w : out.omegas) {
            if (w.imag() < -tol) damped = true;
            const double s = std::abs(w.real());
            if (s <= tol) continue;
            if (std::none_of(speeds.begin(), speeds.end(), [&](double x) { return std::abs(x - s) <= tol; })) speeds.push_back(s);
        }
        out.regime = (!damped && speeds.size() >= 2) ? Regime::two_real_speeds : Regime::degenerate;
    }
    return out;
}

hydro::RhsSpec menu_pairing_spec(TermKind q1, TermKind q2)
{
    using hydro::Slot;
    if (hydro::slot_of(q1) != Slot::q1) throw ValidationError("scan.q1", fmt::format("{} is not a Q1 operator", hydro::to_string(q1)));
    if (hydro::slot_of(q2) != Slot::q2) throw ValidationError("scan.q2", fmt::format("{} is not a Q2 operator", hydro::to_string(q2)));
    hydro::RhsSpec spec;
    spec.terms.push_back({"I", Slot::q1, q1, 1.0, "C"});
    spec.terms.push_back({"I", Slot::q2, q2, -1.0, "C"});
    spec.terms.push_back({"C", Slot::q1, TermKind::div_v, 1.0, "I"});
    spec.terms.push_back({"C", Slot::q2, TermKind::grad_U, 1.0, "I"});
    return spec;
}

} // namespace efluid::linear
