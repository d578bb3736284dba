#pragma once

#include <complex>
#include <optional>
#include <span>

namespace efluid::linear {

struct ModeMeasurement {
    /// Angular frequency |omega| of the spectral peak.
    std::optional<double> omega;
    /// Exponential envelope rate.
    std::optional<double> gamma;
};

/**
 * Frequency and growth rate of a uniformly sampled mode amplitude.
 *
 * omega: peak of the Hann-windowed, 8x zero-padded DFT, refined by a parabola
 * through the log magnitudes of the three bins around the peak. Real input is
 * searched over non-negative frequencies only.
 *
 * gamma: least-squares slope of log|z| for complex input; for real input the
 * envelope is sampled at the (parabola-refined) local maxima of |x|.
 *
 * A flat signal yields both fields empty. Needs at least 16 samples on a
 * uniform, increasing time axis.
 */
ModeMeasurement mode_measurement(std::span<const double> times, std::span<const std::complex<double>> samples);
ModeMeasurement mode_measurement(std::span<const double> times, std::span<const double> samples);

} // namespace efluid::linear
