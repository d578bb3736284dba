#include "efluid/linear/modes.hpp"

#include "efluid/errors.hpp"
#include "efluid/linear/biwave.hpp"

#include <cmath>
#include <fmt/format.h>

namespace efluid::linear {

using cplx = std::complex<double>;

ModeShape eigenmode(const hydro::ConjugateParams& p, double k, cplx omega)
{
    if (k == 0.0 || std::abs(omega) == 0.0) {
        throw ValidationError(fmt::format("eigenmode needs k != 0 and omega != 0 (k = {}, |omega| = {})", k, std::abs(omega)));
    }
    const cplx s = omega * omega / (k * k);
    const double A = p.alpha_c * p.beta_i / p.u_c0;
    ModeShape m{k, omega, 1.0, (A - s) / p.beta_c, 0.0, 0.0};
    m.v_i = -k * p.beta_c * m.q_c / (p.u_i0 * omega);
    m.v_c = -k * p.beta_i * m.q_i / (p.u_c0 * omega);
    return m;
}

double discrete_wavenumber(double k, double dx)
{
    return std::sin(k * dx) / dx;
}

ModeShape discrete_eigenmode(const hydro::ConjugateParams& p, const espace::SpaceGrid& grid, double k, int branch)
{
    if (branch != 1 && branch != 2) throw ValidationError("init.branch", fmt::format("must be 1 or 2 (got {})", branch));
    const double k_eff = discrete_wavenumber(k, grid.spacing(0));
    const DispersionResult d = dispersion(biwave_coeffs(p), k_eff);
    const cplx omega = d.roots[branch == 1 ? 0 : 2];
    ModeShape m = eigenmode(p, k_eff, omega);
    m.k = k;
    return m;
}

hydro::State plane_wave_state(const espace::SpaceGrid& grid, const hydro::ConjugateParams& p, const ModeShape& mode,
                              double amplitude, double t, bool with_background)
{
    hydro::State s;
    s.push_back({"I", espace::ScalarField(grid, with_background ? p.u_i0 : 0.0), espace::VectorField(grid)});
    s.push_back({"C", espace::ScalarField(grid, with_background ? p.u_c0 : 0.0), espace::VectorField(grid)});
    auto vi = s[0].v.component(0);
    auto vc = s[1].v.component(0);
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double x = grid.coord(0, grid.unflat(n)[0]);
        const cplx phase = amplitude * std::exp(cplx(0.0, mode.k * x) - cplx(0.0, 1.0) * mode.omega * t);
        s[0].U[n] += (mode.q_i * phase).real();
        s[1].U[n] += (mode.q_c * phase).real();
        vi[n] = (mode.v_i * phase).real();
        vc[n] = (mode.v_c * phase).real();
    }
    return s;
}

cplx fourier_amplitude(const espace::ScalarField& f, double k)
{
    const auto& grid = f.grid();
    cplx sum = 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double x = grid.coord(0, grid.unflat(n)[0]);
        sum += f[n] * std::exp(cplx(0.0, -k * x));
    }
    return sum / static_cast<double>(grid.size());
}

} // namespace efluid::linear
