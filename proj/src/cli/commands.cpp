#include "efluid/cli/commands.hpp"

#include "efluid/aggregate/series.hpp"
#include "efluid/cli/scan.hpp"
#include "efluid/cli/trajectory_io.hpp"
#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"
#include "efluid/hydro/conjugate.hpp"
#include "efluid/hydro/generic.hpp"
#include "efluid/kinetic/aggregation.hpp"
#include "efluid/linear/dispersion_io.hpp"
#include "efluid/linear/modes.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <random>

namespace efluid::cli {

namespace fs = std::filesystem;

namespace {

double seeded_phase(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return 2.0 * std::numbers::pi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

hydro::State background_state(const SimConfig& cfg)
{
    hydro::State s;
    for (std::size_t f = 0; f < cfg.model.fluids.size(); ++f) {
        s.push_back({cfg.model.fluids[f], espace::ScalarField(cfg.grid, cfg.model.backgrounds[f]), espace::VectorField(cfg.grid)});
    }
    return s;
}

} // namespace

hydro::State initial_state(const SimConfig& cfg)
{
    const auto& grid = cfg.grid;
    const auto& init = cfg.init;
    switch (init.mode) {
    case InitMode::from_file:
        return read_state_csv(init.file, grid, cfg.model.fluids);
    case InitMode::gaussian_bump: {
        hydro::State s = background_state(cfg);
        for (std::size_t n = 0; n < grid.size(); ++n) {
            const auto idx = grid.unflat(n);
            double r2 = 0.0;
            for (int d = 0; d < grid.dim(); ++d) {
                const double dx = grid.coord(d, idx[d]) - init.center[d];
                r2 += dx * dx;
            }
            s[0].U[n] += init.amplitude * std::exp(-r2 / (2.0 * init.width * init.width));
        }
        return s;
    }
    case InitMode::plane_wave:
        break;
    }
    const double phase = init.random_phase ? seeded_phase(init.seed) : 0.0;
    if (cfg.model.type == ModelType::conjugate) {
        auto mode = linear::discrete_eigenmode(*cfg.model.conjugate, grid, init.k, init.branch);
        const std::complex<double> rot = std::polar(1.0, phase);
        mode.q_i *= rot;
        mode.q_c *= rot;
        mode.v_i *= rot;
        mode.v_c *= rot;
        return linear::plane_wave_state(grid, *cfg.model.conjugate, mode, init.amplitude, 0.0, true);
    }
    hydro::State s = background_state(cfg);
    for (std::size_t n = 0; n < grid.size(); ++n) {
        s[0].U[n] += init.amplitude * std::cos(init.k * grid.coord(0, grid.unflat(n)[0]) + phase);
    }
    return s;
}

std::unique_ptr<hydro::Model> make_model(const SimConfig& cfg)
{
    if (cfg.model.type == ModelType::conjugate) return std::make_unique<hydro::ConjugateModel>(*cfg.model.conjugate);
    return std::make_unique<hydro::GenericModel>(cfg.model.spec);
}

SimulateResult cmd_simulate(const fs::path& config, const std::optional<fs::path>& out_dir)
{
    const SimConfig cfg = load_sim_config(config);
    fs::path dir = out_dir ? *out_dir : cfg.output.directory;
    if (dir.empty()) throw ValidationError("output.directory", "no output directory (set output.directory or pass -o)");

    hydro::State s0 = initial_state(cfg);
    const auto model = make_model(cfg);

    TrajectoryWriter writer(dir);
    aggregate::MacroTimeSeries series;
    for (const auto& f : s0) series.names.push_back(f.name);
    series.values.resize(s0.size());
    const auto summary = hydro::simulate(std::move(s0), *model, cfg.run, [&](std::size_t, double t, const hydro::State& s) {
        writer.add(t, s);
        series.append(t, aggregate::totals(s, cfg.output.aggregate_window));
    });
    writer.finish();
    aggregate::write_series_csv(dir / "series.csv", series);

    SimulateResult result{dir, summary, {}, cfg.warnings};
    std::vector<std::pair<std::string, std::string>> extra;
    for (std::size_t f = 0; f < series.names.size(); ++f) {
        result.dominant_frequencies.push_back(aggregate::dominant_frequency(series, f));
        extra.emplace_back("dominant_frequency_" + series.names[f], espace::format_optional(result.dominant_frequencies.back()));
    }
    write_manifest(dir / "manifest.txt", cfg, summary, extra);
    return result;
}

void cmd_disperse(const DisperseArgs& args, const fs::path& out)
{
    const auto p = hydro::ConjugateParams::make(args.alpha_i, args.alpha_c, args.beta_i, args.beta_c, args.u_i0, args.u_c0);
    const auto rows = linear::dispersion_sweep(linear::biwave_coeffs(p), args.k_min, args.k_max, args.k_steps);
    linear::write_dispersion_csv(out, rows);
}

void cmd_scan(const fs::path& scan_cfg, const fs::path& out)
{
    write_scan_csv(out, run_scan(scan_cfg));
}

void cmd_aggregate(const fs::path& index, const fs::path& out)
{
    const Manifest m = read_manifest(index.parent_path() / "manifest.txt");
    const auto trajectory = read_trajectory(index, m.config.grid, m.config.model.fluids);
    aggregate::write_series_csv(out, aggregate::macro_series(trajectory, m.config.output.aggregate_window));
}

kinetic::EnsembleSpec load_ensemble_spec(const fs::path& spec)
{
    const IniDoc doc = IniDoc::load(spec);
    doc.allow_sections({"space", "agents", "variables"});
    doc.allow_keys("agents", {"placement", "center", "width", "velocity"});
    kinetic::EnsembleSpec es{parse_space(doc), {}, {}, false, {}, {}, {}};
    const auto& grid = es.grid;

    const std::string placement = doc.get("agents", "placement").value_or("uniform");
    if (placement == "normal") {
        es.normal_placement = true;
        auto per_axis = [&](const std::string& key) {
            auto v = doc.numbers("agents", key);
            if (v.size() == 1) v.assign(static_cast<std::size_t>(grid.dim()), v[0]);
            if (v.size() != static_cast<std::size_t>(grid.dim())) throw ValidationError("agents." + key, "needs 1 or dim values");
            std::array<double, 3> out{};
            std::copy(v.begin(), v.end(), out.begin());
            return out;
        };
        es.center = per_axis("center");
        es.width = per_axis("width");
        for (int d = 0; d < grid.dim(); ++d) {
            if (!(es.width[d] > 0.0)) throw ValidationError("agents.width", "must be > 0");
        }
    } else if (placement != "uniform") {
        throw ValidationError("agents.placement", fmt::format("unknown placement '{}' (uniform, normal)", placement));
    }
    es.velocity = kinetic::parse_distribution(doc.get("agents", "velocity").value_or("constant 0"), "agents.velocity");
    for (const auto& key : doc.keys("variables")) {
        es.var_names.push_back(key);
        es.vars.push_back(kinetic::parse_distribution(doc.require("variables", key), "variables." + key));
    }
    if (es.var_names.empty()) throw ValidationError("variables", "the [variables] section needs at least one variable");
    return es;
}

void cmd_agents(std::size_t count, std::uint64_t seed, const fs::path& spec, const fs::path& out_dir)
{
    const auto es = load_ensemble_spec(spec);
    const auto ens = kinetic::generate_ensemble(count, seed, es);
    fs::create_directories(out_dir);
    kinetic::write_ensemble_csv(out_dir / "ensemble.csv", ens);
    for (std::size_t j = 0; j < ens.var_count(); ++j) {
        const std::string& name = ens.var_names()[j];
        const auto U = kinetic::aggregate_density(ens, j);
        const auto P = kinetic::aggregate_impulse(ens, j);
        const auto v = kinetic::velocity_from_impulse(U, P, kinetic::default_velocity_floor(U));
        espace::write_field_csv(out_dir / ("density_" + name + ".csv"), U, name);
        espace::write_field_csv(out_dir / ("impulse_" + name + ".csv"), P, name);
        espace::write_field_csv(out_dir / ("velocity_" + name + ".csv"), v.v, name);
    }
}

} // namespace efluid::cli
