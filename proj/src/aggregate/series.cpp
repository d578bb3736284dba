#include "efluid/aggregate/series.hpp"

#include "efluid/aggregate/quadrature.hpp"
#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"
#include "efluid/linear/measurement.hpp"

#include <fmt/format.h>

namespace efluid::aggregate {

void MacroTimeSeries::append(double t, const std::vector<double>& row)
{
    if (row.size() != names.size()) throw ValidationError("series row width does not match fluid count");
    if (!times.empty() && !(t > times.back())) {
        throw ValidationError(fmt::format("series times must increase strictly ({} after {})", t, times.back()));
    }
    if (values.size() != names.size()) values.assign(names.size(), {});
    times.push_back(t);
    for (std::size_t f = 0; f < row.size(); ++f) values[f].push_back(row[f]);
}

std::vector<double> totals(const hydro::State& s, std::optional<double> window)
{
    std::vector<double> out;
    for (const auto& f : s) out.push_back(window ? integrate_window(f.U, *window) : integrate_density(f.U));
    return out;
}

MacroTimeSeries macro_series(const std::vector<Snapshot>& trajectory, std::optional<double> window)
{
    MacroTimeSeries series;
    if (trajectory.empty()) return series;
    for (const auto& f : trajectory.front().state) series.names.push_back(f.name);
    series.values.assign(series.names.size(), {});
    for (const auto& snap : trajectory) series.append(snap.t, totals(snap.state, window));
    return series;
}

std::optional<double> dominant_frequency(const MacroTimeSeries& series, std::size_t f)
{
    if (f >= series.values.size()) throw ValidationError(fmt::format("series has no fluid index {}", f));
    // A trailing snapshot off the output stride is dropped.
    std::size_t count = series.times.size();
    if (count >= 3) {
        const double h = series.times[1] - series.times[0];
        const double last = series.times[count - 1] - series.times[count - 2];
        if (std::abs(last - h) > 1e-6 * h) --count;
    }
    if (count < 16) return std::nullopt;
    const std::vector<double> v(series.values[f].begin(), series.values[f].begin() + static_cast<std::ptrdiff_t>(count));
    const std::vector<double> times(series.times.begin(), series.times.begin() + static_cast<std::ptrdiff_t>(count));
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    std::vector<double> centred(v.size());
    for (std::size_t n = 0; n < v.size(); ++n) centred[n] = v[n] - mean;
    // Totals of order one carry roundoff near 1e-16; below that the series is flat.
    double spread = 0.0;
    for (double x : centred) spread = std::max(spread, std::abs(x));
    if (spread <= 1e-13 * std::max(1.0, std::abs(mean))) return std::nullopt;
    return linear::mode_measurement(times, centred).omega;
}

void write_series_csv(const std::filesystem::path& path, const MacroTimeSeries& series)
{
    espace::CsvTable table;
    table.header.push_back("t");
    for (const auto& n : series.names) table.header.push_back(fmt::format("U_{}_total", n));
    for (std::size_t r = 0; r < series.times.size(); ++r) {
        std::vector<std::string> row{espace::format_number(series.times[r])};
        for (const auto& col : series.values) row.push_back(espace::format_number(col[r]));
        table.rows.push_back(std::move(row));
    }
    espace::write_csv(path, table);
}

MacroTimeSeries read_series_csv(const std::filesystem::path& path)
{
    const auto table = espace::read_csv(path);
    if (table.header.empty() || table.header.front() != "t") {
        throw ValidationError(fmt::format("'{}': series CSV must start with column 't'", path.string()));
    }
    MacroTimeSeries series;
    for (std::size_t c = 1; c < table.header.size(); ++c) {
        const auto& h = table.header[c];
        if (h.size() < 9 || h.rfind("U_", 0) != 0 || h.substr(h.size() - 6) != "_total") {
            throw ValidationError(fmt::format("'{}': unexpected series column '{}'", path.string(), h));
        }
        series.names.push_back(h.substr(2, h.size() - 8));
    }
    series.values.assign(series.names.size(), {});
    for (const auto& row : table.rows) {
        std::vector<double> r;
        for (std::size_t c = 1; c < row.size(); ++c) r.push_back(espace::parse_number(row[c], table.header[c]));
        series.append(espace::parse_number(row[0], "t"), r);
    }
    return series;
}

} // namespace efluid::aggregate
