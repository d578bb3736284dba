#include "efluid/cli/scan.hpp"

#include "efluid/cli/config.hpp"
#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"
#include "efluid/linear/symbol.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <fmt/format.h>
#include <random>
#include <thread>

namespace efluid::cli {

using hydro::TermKind;

std::vector<ScanRow> run_tasks(std::size_t count, unsigned threads, const std::function<ScanRow(std::size_t)>& task)
{
    std::vector<ScanRow> rows(count);
    std::vector<std::exception_ptr> errors(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                rows[i] = task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

ScanRow scan_params_point(const hydro::ConjugateParams& p, double k, std::string point)
{
    const auto c = linear::biwave_coeffs(p);
    const auto d = linear::dispersion(c, k);
    double growth = 0.0;
    for (const auto& w : d.roots) growth = std::max(growth, w.imag());
    return {std::move(point), p, c.a, c.b, d.regime, growth};
}

std::vector<std::pair<TermKind, TermKind>> menu_pairings()
{
    std::vector<std::pair<TermKind, TermKind>> out;
    for (auto q1 : {TermKind::U, TermKind::dU_dt, TermKind::div_v, TermKind::lap_U}) {
        for (auto q2 : {TermKind::v, TermKind::dv_dt, TermKind::grad_U, TermKind::rot_v, TermKind::lap_v}) out.emplace_back(q1, q2);
    }
    return out;
}

ScanRow scan_menu_point(TermKind q1, TermKind q2, double k)
{
    const auto spec = linear::menu_pairing_spec(q1, q2);
    const std::vector<std::string> fluids{"I", "C"};
    spec.validate(fluids, 3);

    // Smooth, nonuniform rest-state perturbation on a coarse periodic box.
    const espace::SpaceGrid grid(3, {1.0, 1.0, 1.0}, {4, 4, 4}, espace::Boundary::periodic);
    hydro::State s;
    for (std::size_t f = 0; f < fluids.size(); ++f) {
        hydro::FluidState fs{fluids[f], espace::ScalarField(grid, 1.0), espace::VectorField(grid)};
        for (std::size_t n = 0; n < grid.size(); ++n) {
            const auto idx = grid.unflat(n);
            const double x = grid.coord(0, idx[0]), y = grid.coord(1, idx[1]), z = grid.coord(2, idx[2]);
            const double phase = 2.0 * std::numbers::pi * (x + 2.0 * y + 3.0 * z) + static_cast<double>(f);
            fs.U[n] += 0.01 * std::cos(phase);
            for (int d = 0; d < 3; ++d) fs.v.component(d)[n] = 0.01 * std::sin(phase + d);
        }
        s.push_back(std::move(fs));
    }
    const auto r = hydro::generic_rhs(s, spec);
    hydro::require_finite(r.derivative, fmt::format("menu pairing {}/{}", hydro::to_string(q1), hydro::to_string(q2)));

    const auto sym = linear::analyze_symbol(spec, fluids, {1.0, 1.0}, k);
    return {fmt::format("Q1={};Q2={}", hydro::to_string(q1), hydro::to_string(q2)), std::nullopt, sym.a, sym.b, sym.regime,
            sym.max_growth};
}

namespace {

std::uint64_t next_u64(std::mt19937_64& rng) { return rng(); }

double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(next_u64(rng) >> 11) * 0x1.0p-53;
}

std::pair<double, double> range(const IniDoc& doc, const std::string& key, std::pair<double, double> fallback)
{
    if (!doc.get("scan", key)) return fallback;
    const auto v = doc.numbers("scan", key);
    if (v.size() != 2 || !(v[0] <= v[1])) throw ValidationError("scan." + key, "expected 'lo, hi' with lo <= hi");
    return {v[0], v[1]};
}

std::vector<double> list_or(const IniDoc& doc, const std::string& key, double fallback)
{
    return doc.get("scan", key) ? doc.numbers("scan", key) : std::vector<double>{fallback};
}

} // namespace

std::vector<ScanRow> run_scan(const std::filesystem::path& scan_cfg)
{
    const IniDoc doc = IniDoc::load(scan_cfg);
    doc.allow_sections({"scan"});
    const std::string mode = doc.require("scan", "mode");
    const double k = doc.number_or("scan", "k", 1.0);
    if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("scan.k", "must be finite and > 0");
    const long long threads = doc.integer_or("scan", "threads", 0);
    if (threads < 0) throw ValidationError("scan.threads", "must be >= 0");
    const auto nthreads = static_cast<unsigned>(threads);

    if (mode == "params") {
        doc.allow_keys("scan", {"mode", "k", "threads", "alpha_i", "alpha_c", "beta_i", "beta_c", "u_i0", "u_c0"});
        const auto ai = doc.numbers("scan", "alpha_i");
        const auto ac = doc.numbers("scan", "alpha_c");
        const auto bi = doc.numbers("scan", "beta_i");
        const auto bc = doc.numbers("scan", "beta_c");
        const auto ui = list_or(doc, "u_i0", 1.0);
        const auto uc = list_or(doc, "u_c0", 1.0);
        std::vector<hydro::ConjugateParams> points;
        for (double a1 : ai)
            for (double a2 : ac)
                for (double b1 : bi)
                    for (double b2 : bc)
                        for (double u1 : ui)
                            for (double u2 : uc) points.push_back(hydro::ConjugateParams::make(a1, a2, b1, b2, u1, u2));
        return run_tasks(points.size(), nthreads,
                         [&](std::size_t i) { return scan_params_point(points[i], k, std::to_string(i)); });
    }
    if (mode == "random") {
        doc.allow_keys("scan", {"mode", "k", "threads", "samples", "seed", "alpha_i_range", "alpha_c_range", "beta_i_range",
                                "beta_c_range", "u_i0", "u_c0"});
        const long long samples = doc.integer("scan", "samples");
        if (samples < 1) throw ValidationError("scan.samples", "must be >= 1");
        const auto seed = static_cast<std::uint64_t>(doc.integer_or("scan", "seed", 0));
        const auto rai = range(doc, "alpha_i_range", {0.01, 2.0});
        const auto rac = range(doc, "alpha_c_range", {0.01, 2.0});
        const auto rbi = range(doc, "beta_i_range", {0.01, 20.0});
        const auto rbc = range(doc, "beta_c_range", {-20.0, -0.01});
        const double ui = doc.number_or("scan", "u_i0", 1.0);
        const double uc = doc.number_or("scan", "u_c0", 1.0);
        // Sampling is sequential so the parameter points depend on the seed only.
        std::mt19937_64 rng(seed);
        auto draw = [&](std::pair<double, double> r) { return r.first + (r.second - r.first) * uniform01(rng); };
        std::vector<hydro::ConjugateParams> points;
        points.reserve(static_cast<std::size_t>(samples));
        for (long long i = 0; i < samples; ++i) {
            const double a1 = draw(rai), a2 = draw(rac), b1 = draw(rbi), b2 = draw(rbc);
            points.push_back(hydro::ConjugateParams::make(a1, a2, b1, b2, ui, uc));
        }
        return run_tasks(points.size(), nthreads,
                         [&](std::size_t i) { return scan_params_point(points[i], k, std::to_string(i)); });
    }
    if (mode == "menu") {
        doc.allow_keys("scan", {"mode", "k", "threads"});
        const auto pairs = menu_pairings();
        return run_tasks(pairs.size(), nthreads,
                         [&](std::size_t i) { return scan_menu_point(pairs[i].first, pairs[i].second, k); });
    }
    throw ValidationError("scan.mode", fmt::format("unknown mode '{}' (params, random, menu)", mode));
}

namespace {

const std::vector<std::string> scan_header = {"point", "alpha_i", "alpha_c", "beta_i", "beta_c", "u_i0",      "u_c0",
                                              "a",     "b",       "disc",    "regime", "max_growth"};

} // namespace

void write_scan_csv(const std::filesystem::path& path, const std::vector<ScanRow>& rows)
{
    espace::CsvTable t;
    t.header = scan_header;
    for (const auto& r : rows) {
        std::vector<std::string> row{r.point};
        if (r.params) {
            for (double x : {r.params->alpha_i, r.params->alpha_c, r.params->beta_i, r.params->beta_c, r.params->u_i0,
                             r.params->u_c0})
                row.push_back(espace::format_number(x));
        } else {
            row.insert(row.end(), 6, std::string{});
        }
        row.push_back(espace::format_number(r.a));
        row.push_back(espace::format_number(r.b));
        row.push_back(espace::format_number(r.a * r.a - 4.0 * r.b));
        row.push_back(linear::to_string(r.regime));
        row.push_back(espace::format_number(r.max_growth));
        t.rows.push_back(std::move(row));
    }
    espace::write_csv(path, t);
}

std::vector<ScanRow> read_scan_csv(const std::filesystem::path& path)
{
    const auto t = espace::read_csv(path);
    for (std::size_t i = 0; i < std::max(t.header.size(), scan_header.size()); ++i) {
        if (i >= t.header.size() || i >= scan_header.size() || t.header[i] != scan_header[i]) {
            const std::string col = i < t.header.size() ? t.header[i] : scan_header[i];
            throw ValidationError(col, fmt::format("{}: unexpected scan column '{}'", path.string(), col));
        }
    }
    std::vector<ScanRow> out;
    for (const auto& row : t.rows) {
        ScanRow r;
        r.point = row[0];
        if (!row[1].empty()) {
            hydro::ConjugateParams p{};
            double* dst[] = {&p.alpha_i, &p.alpha_c, &p.beta_i, &p.beta_c, &p.u_i0, &p.u_c0};
            for (std::size_t c = 0; c < 6; ++c) *dst[c] = espace::parse_number(row[1 + c], scan_header[1 + c]);
            r.params = p;
        }
        r.a = espace::parse_number(row[7], "a");
        r.b = espace::parse_number(row[8], "b");
        r.regime = linear::parse_regime(row[10]);
        r.max_growth = espace::parse_number(row[11], "max_growth");
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace efluid::cli
