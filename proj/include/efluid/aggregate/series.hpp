#pragma once

#include "efluid/hydro/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace efluid::aggregate {

/// Whole-economy totals of each fluid over time.
struct MacroTimeSeries {
    std::vector<double> times;
    std::vector<std::string> names;
    /// values[f][n]: total of fluid f at times[n].
    std::vector<std::vector<double>> values;

    void append(double t, const std::vector<double>& totals);
};

struct Snapshot {
    double t;
    hydro::State state;
};

/// Per-snapshot totals. `window` (1D only) integrates over [0, window]
/// instead of the whole domain.
MacroTimeSeries macro_series(const std::vector<Snapshot>& trajectory, std::optional<double> window = std::nullopt);

/// Totals of one state (the series row for one time).
std::vector<double> totals(const hydro::State& s, std::optional<double> window = std::nullopt);

/// Dominant angular frequency of the mean-subtracted series of fluid `f`;
/// empty for flat series or fewer than 16 samples.
std::optional<double> dominant_frequency(const MacroTimeSeries& series, std::size_t f);

/// `t,U_<name>_total,...`
void write_series_csv(const std::filesystem::path& path, const MacroTimeSeries& series);
MacroTimeSeries read_series_csv(const std::filesystem::path& path);

} // namespace efluid::aggregate
