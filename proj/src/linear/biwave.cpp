#include "efluid/linear/biwave.hpp"

#include "efluid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace efluid::linear {

BiWaveCoeffs normalized_biwave_coeffs(const hydro::ConjugateParams& p)
{
    return {p.alpha_i * p.beta_c + p.alpha_c * p.beta_i, p.beta_c * p.beta_i * (p.alpha_i * p.alpha_c - 1.0), false};
}

BiWaveCoeffs biwave_coeffs(const hydro::ConjugateParams& p)
{
    BiWaveCoeffs c{p.alpha_c * p.beta_i / p.u_c0 + p.alpha_i * p.beta_c / p.u_i0,
                   p.beta_c * p.beta_i * (p.alpha_i * p.alpha_c / (p.u_i0 * p.u_c0) - 1.0), true};
    if (p.u_i0 == 1.0 && p.u_c0 == 1.0) {
        const BiWaveCoeffs n = normalized_biwave_coeffs(p);
        if (n.a != c.a || n.b != c.b) {
            throw NumericalError(fmt::format("biwave_coeffs: general form ({}, {}) disagrees with normalized form ({}, {})",
                                             c.a, c.b, n.a, n.b));
        }
        c.general_form = false;
    }
    return c;
}

const char* to_string(Regime r)
{
    switch (r) {
    case Regime::two_real_speeds: return "two_real_speeds";
    case Regime::growing_modes: return "growing_modes";
    case Regime::degenerate: return "degenerate";
    }
    return "degenerate";
}

Regime parse_regime(const std::string& text)
{
    if (text == "two_real_speeds") return Regime::two_real_speeds;
    if (text == "growing_modes") return Regime::growing_modes;
    if (text == "degenerate") return Regime::degenerate;
    throw ValidationError(fmt::format("unknown regime '{}'", text));
}

Regime classify_by_signs(double a, double b)
{
    const double disc = a * a - 4.0 * b;
    if (disc < 0.0) return Regime::growing_modes;
    if (disc > 0.0 && a > 0.0 && b > 0.0) return Regime::two_real_speeds;
    return Regime::degenerate;
}

std::array<std::complex<double>, 2> speed_squares(double a, double b)
{
    const double disc = a * a - 4.0 * b;
    if (disc < 0.0) {
        const double im = 0.5 * std::sqrt(-disc);
        return {std::complex<double>(0.5 * a, im), std::complex<double>(0.5 * a, -im)};
    }
    // Stable root pair: q = (a + sign(a) sqrt(disc)) / 2, other = b / q.
    const double q = 0.5 * (a + std::copysign(std::sqrt(disc), a));
    if (q == 0.0) return {0.0, 0.0};
    const double s1 = q;
    const double s2 = b / q;
    return {std::max(s1, s2), std::min(s1, s2)};
}

double max_signal_speed(const BiWaveCoeffs& c)
{
    const auto s = speed_squares(c.a, c.b);
    return std::sqrt(std::max(std::abs(s[0]), std::abs(s[1])));
}

double quartic_residual(const BiWaveCoeffs& c, double k, std::complex<double> omega)
{
    const std::complex<double> w2 = omega * omega;
    const double k2 = k * k;
    return std::abs(w2 * w2 - c.a * k2 * w2 + c.b * k2 * k2);
}

DispersionResult dispersion(const BiWaveCoeffs& c, double k)
{
    if (k == 0.0 || !std::isfinite(k)) throw ValidationError(fmt::format("dispersion: wavenumber must be nonzero and finite (got {})", k));
    const double kk = std::abs(k);
    const auto s = speed_squares(c.a, c.b);
    const std::complex<double> r1 = kk * std::sqrt(s[0]);
    const std::complex<double> r2 = kk * std::sqrt(s[1]);

    DispersionResult out{k, {r1, -r1, r2, -r2}, Regime::degenerate, std::nullopt, std::nullopt, std::nullopt};
    const double k2 = kk * kk;
    for (const auto& w : out.roots) {
        const double w4 = std::norm(w) * std::norm(w);
        const double scale = std::max({1.0, w4, std::abs(c.a) * k2 * std::norm(w), std::abs(c.b) * k2 * k2});
        const double res = quartic_residual(c, kk, w);
        if (!(res <= 1e-9 * scale)) {
            throw NumericalError(fmt::format("dispersion: root ({}, {}) leaves residual {} (a = {}, b = {}, k = {})",
                                             w.real(), w.imag(), res, c.a, c.b, k));
        }
    }

    if (s[0].imag() != 0.0) {
        out.regime = Regime::growing_modes;
        double g = 0.0;
        for (const auto& w : out.roots) g = std::max(g, w.imag());
        out.gamma = g;
    } else if (s[0].real() > 0.0 && s[1].real() > 0.0 && s[0].real() != s[1].real()) {
        out.regime = Regime::two_real_speeds;
        out.c1_sq = s[0].real();
        out.c2_sq = s[1].real();
    }
    return out;
}

ClosedFormGrowth closed_form_growth(double a, double b, double k)
{
    const double root = std::sqrt(4.0 * b + 3.0 * a * a);
    const double k2 = k * k;
    return {k2 * (root + 2.0 * a) / 8.0, k2 * (root - 2.0 * a) / 8.0};
}

GrowthComparison compare_growth_formulas(double a, double b, double k)
{
    if (!(a * a <= 4.0 * b)) {
        throw ValidationError(fmt::format("growth formulas apply to a^2 < 4b only (a = {}, b = {}, a^2 - 4b = {})", a, b,
                                          a * a - 4.0 * b));
    }
    if (k == 0.0) throw ValidationError("growth formulas: wavenumber must be nonzero");
    const auto s = speed_squares(a, b);
    const std::complex<double> w = std::abs(k) * std::sqrt(s[0]);
    GrowthComparison out{k, closed_form_growth(a, b, k), w.real() * w.real(), w.imag() * w.imag(), 0.0, 0.0};
    out.omega_sq_discrepancy = out.closed_form.omega_sq - out.root_omega_sq;
    out.gamma_sq_discrepancy = out.closed_form.gamma_sq - out.root_gamma_sq;
    return out;
}

} // namespace efluid::linear
