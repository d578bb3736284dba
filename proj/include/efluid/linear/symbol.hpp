#pragma once

#include "efluid/hydro/generic.hpp"
#include "efluid/linear/biwave.hpp"

#include <complex>
#include <string>
#include <vector>

namespace efluid::linear {

/// Linear plane-wave analysis of an arbitrary operator-menu system about
/// rest states with constant densities, wavevector k along axis 1, 3D velocities.
struct SymbolAnalysis {
    /// All 4N frequencies omega (N fluids: q plus three velocity components).
    std::vector<std::complex<double>> omegas;
    /// From the longitudinal (q, v_x) block's monic characteristic polynomial
    /// in omega: a = -c_{2N-2} / k^2, b = c_{2N-4} / k^4 (two fluids: the
    /// biquadratic coefficients when the polynomial is even).
    double a;
    double b;
    double max_growth;
    Regime regime;
};

SymbolAnalysis analyze_symbol(const hydro::RhsSpec& spec, const std::vector<std::string>& fluids,
                              const std::vector<double>& backgrounds, double k);

/// Single-term menu pairing: fluid I takes `q1`(C) with coefficient +1 and
/// `q2`(C) with coefficient -1; fluid C keeps div_v(I) and grad_U(I), both +1.
hydro::RhsSpec menu_pairing_spec(hydro::TermKind q1, hydro::TermKind q2);

} // namespace efluid::linear
