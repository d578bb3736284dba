#pragma once

#include "efluid/hydro/conjugate.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace efluid::linear {

/// Coefficients of omega^4 - a k^2 omega^2 + b k^4 = 0.
struct BiWaveCoeffs {
    double a;
    double b;
    /// True when background densities differ from 1, i.e. the coefficients
    /// are not the normalized a = aI bC + aC bI, b = bC bI (aI aC - 1).
    bool general_form;
};

/**
 * a = alpha_C beta_I / U_C0 + alpha_I beta_C / U_I0
 * b = beta_C beta_I (alpha_I alpha_C / (U_I0 U_C0) - 1)
 *
 * Obtained by plane-wave substitution into the linearized two-fluid system.
 * At U_I0 = U_C0 = 1 the normalized form is checked to match exactly.
 */
BiWaveCoeffs biwave_coeffs(const hydro::ConjugateParams& p);

/// a = alpha_I beta_C + alpha_C beta_I, b = beta_C beta_I (alpha_I alpha_C - 1).
BiWaveCoeffs normalized_biwave_coeffs(const hydro::ConjugateParams& p);

enum class Regime { two_real_speeds, growing_modes, degenerate };

const char* to_string(Regime r);
Regime parse_regime(const std::string& text);

/// Classification straight from the signs of a, b and a^2 - 4b.
Regime classify_by_signs(double a, double b);

/// The two roots s = omega^2 / k^2 of s^2 - a s + b = 0, larger real part
/// first (for complex roots, positive imaginary part first).
std::array<std::complex<double>, 2> speed_squares(double a, double b);

/// sqrt(max |s|): magnitude of the fastest linear signal speed.
double max_signal_speed(const BiWaveCoeffs& c);

struct DispersionResult {
    double k;
    /// {+sqrt(s1), -sqrt(s1), +sqrt(s2), -sqrt(s2)} times |k|.
    std::array<std::complex<double>, 4> roots;
    Regime regime;
    std::optional<double> c1_sq;
    std::optional<double> c2_sq;
    std::optional<double> gamma;
};

/// Solves the biquadratic at wavenumber k != 0 and classifies the regime
/// from the computed roots. Each root is residual-checked.
DispersionResult dispersion(const BiWaveCoeffs& c, double k);

/// |omega^4 - a k^2 omega^2 + b k^4|
double quartic_residual(const BiWaveCoeffs& c, double k, std::complex<double> omega);

/// Closed forms for the growing regime, evaluated as written (they agree with
/// the quartic roots only at a^2 = 4b):
///   omega^2 = k^2 (sqrt(4b + 3a^2) + 2a) / 8
///   gamma^2 = k^2 (sqrt(4b + 3a^2) - 2a) / 8
struct ClosedFormGrowth {
    double omega_sq;
    double gamma_sq;
};
ClosedFormGrowth closed_form_growth(double a, double b, double k);

/// Closed forms next to the quartic-root values (Re omega)^2, (Im omega)^2
/// of the growing root, with their differences. Requires a^2 <= 4b.
struct GrowthComparison {
    double k;
    ClosedFormGrowth closed_form;
    double root_omega_sq;
    double root_gamma_sq;
    double omega_sq_discrepancy;
    double gamma_sq_discrepancy;
};
GrowthComparison compare_growth_formulas(double a, double b, double k);

} // namespace efluid::linear
