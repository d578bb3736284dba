#include "efluid/linear/dispersion_io.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"

#include <fmt/format.h>

namespace efluid::linear {

namespace {

const std::vector<std::string> dispersion_header = {"k",      "re_w1", "im_w1", "re_w2", "im_w2", "re_w3", "im_w3",
                                                    "re_w4",  "im_w4", "regime", "c1_sq", "c2_sq", "gamma"};

std::optional<double> optional_field(const std::string& text, const std::string& column)
{
    if (text.empty()) return std::nullopt;
    return espace::parse_number(text, column);
}

} // namespace

std::vector<DispersionResult> dispersion_sweep(const BiWaveCoeffs& c, double k_min, double k_max, int steps)
{
    if (!(k_min > 0.0)) throw ValidationError("k_min", fmt::format("must be > 0 (got {})", k_min));
    if (!(k_max >= k_min)) throw ValidationError("k_max", "must be >= k_min");
    if (steps < 1) throw ValidationError("k_steps", "must be >= 1");
    if (steps == 1 && k_max != k_min) throw ValidationError("k_steps", "must be >= 2 when k_max > k_min");
    std::vector<DispersionResult> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double k = steps == 1 ? k_min : k_min + (k_max - k_min) * i / (steps - 1);
        out.push_back(dispersion(c, k));
    }
    return out;
}

void write_dispersion_csv(const std::filesystem::path& path, const std::vector<DispersionResult>& rows)
{
    espace::CsvTable t;
    t.header = dispersion_header;
    for (const auto& r : rows) {
        std::vector<std::string> row{espace::format_number(r.k)};
        for (const auto& w : r.roots) {
            row.push_back(espace::format_number(w.real()));
            row.push_back(espace::format_number(w.imag()));
        }
        row.push_back(to_string(r.regime));
        row.push_back(espace::format_optional(r.c1_sq));
        row.push_back(espace::format_optional(r.c2_sq));
        row.push_back(espace::format_optional(r.gamma));
        t.rows.push_back(std::move(row));
    }
    espace::write_csv(path, t);
}

std::vector<DispersionResult> read_dispersion_csv(const std::filesystem::path& path)
{
    const auto t = espace::read_csv(path);
    if (t.header != dispersion_header) {
        for (std::size_t i = 0; i < dispersion_header.size(); ++i) {
            if (i >= t.header.size() || t.header[i] != dispersion_header[i]) {
                throw ValidationError(dispersion_header[i],
                                      fmt::format("{}: expected column '{}'", path.string(), dispersion_header[i]));
            }
        }
        throw ValidationError(t.header[dispersion_header.size()], fmt::format("{}: unexpected extra column", path.string()));
    }
    std::vector<DispersionResult> out;
    for (const auto& row : t.rows) {
        DispersionResult r{};
        r.k = espace::parse_number(row[0], "k");
        for (std::size_t i = 0; i < 4; ++i) {
            r.roots[i] = {espace::parse_number(row[1 + 2 * i], dispersion_header[1 + 2 * i]),
                          espace::parse_number(row[2 + 2 * i], dispersion_header[2 + 2 * i])};
        }
        r.regime = parse_regime(row[9]);
        r.c1_sq = optional_field(row[10], "c1_sq");
        r.c2_sq = optional_field(row[11], "c2_sq");
        r.gamma = optional_field(row[12], "gamma");
        out.push_back(r);
    }
    return out;
}

} // namespace efluid::linear
