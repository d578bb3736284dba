#pragma once

#include "efluid/hydro/conjugate.hpp"

#include <complex>

namespace efluid::linear {

/// Complex amplitudes of a plane wave exp(i (k x - omega t)) along axis 1,
/// normalized to q_I = 1. Velocities are the axis-1 components.
struct ModeShape {
    double k;
    std::complex<double> omega;
    std::complex<double> q_i;
    std::complex<double> q_c;
    std::complex<double> v_i;
    std::complex<double> v_c;
};

/// Eigenvector of the linearized two-fluid system for root `omega` at `k`.
ModeShape eigenmode(const hydro::ConjugateParams& p, double k, std::complex<double> omega);

/// sin(k dx) / dx: the wavenumber seen by centred first differences.
double discrete_wavenumber(double k, double dx);

/// Eigenmode of the centred-difference system on `grid` (k along axis 1).
/// branch 1 takes +sqrt(s1), branch 2 +sqrt(s2); in the growing regime
/// branch 1 is the growing root.
ModeShape discrete_eigenmode(const hydro::ConjugateParams& p, const espace::SpaceGrid& grid, double k, int branch);

/// Fields Re(amplitude * shape * exp(i (k x - omega t))) on `grid`; with
/// `with_background` the densities are U_I0 + q_I and U_C0 + q_C.
hydro::State plane_wave_state(const espace::SpaceGrid& grid, const hydro::ConjugateParams& p, const ModeShape& mode,
                              double amplitude, double t, bool with_background);

/// (1/N) sum_n f_n exp(-i k x_n) over all nodes (x along axis 1).
std::complex<double> fourier_amplitude(const espace::ScalarField& f, double k);

} // namespace efluid::linear
