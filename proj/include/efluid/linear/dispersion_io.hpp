#pragma once

#include "efluid/linear/biwave.hpp"

#include <filesystem>
#include <vector>

namespace efluid::linear {

/// `steps` wavenumbers evenly spaced over [k_min, k_max] (k_min alone when steps == 1).
std::vector<DispersionResult> dispersion_sweep(const BiWaveCoeffs& c, double k_min, double k_max, int steps);

/// `k,re_w1,im_w1,...,re_w4,im_w4,regime,c1_sq,c2_sq,gamma`; absent values are empty fields.
void write_dispersion_csv(const std::filesystem::path& path, const std::vector<DispersionResult>& rows);
std::vector<DispersionResult> read_dispersion_csv(const std::filesystem::path& path);

} // namespace efluid::linear
