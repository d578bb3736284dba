#pragma once

#include "efluid/cli/config.hpp"
#include "efluid/hydro/integrator.hpp"
#include "efluid/kinetic/generate.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>

namespace efluid::cli {

/// Initial state described by the [init] section.
hydro::State initial_state(const SimConfig& cfg);
std::unique_ptr<hydro::Model> make_model(const SimConfig& cfg);

struct SimulateResult {
    std::filesystem::path directory;
    hydro::RunSummary summary;
    std::vector<std::optional<double>> dominant_frequencies;
    std::vector<std::string> warnings;
};

/// Runs the configured simulation into `out_dir` (or output.directory):
/// snapshot_NNNNNN.csv, index.csv, series.csv and manifest.txt.
SimulateResult cmd_simulate(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir);

struct DisperseArgs {
    double alpha_i = 0.0;
    double alpha_c = 0.0;
    double beta_i = 0.0;
    double beta_c = 0.0;
    double u_i0 = 1.0;
    double u_c0 = 1.0;
    double k_min = 0.0;
    double k_max = 0.0;
    int k_steps = 0;
};

void cmd_disperse(const DisperseArgs& args, const std::filesystem::path& out);

void cmd_scan(const std::filesystem::path& scan_cfg, const std::filesystem::path& out);

/// Recomputes the macro series of a trajectory from its index file; the grid
/// and fluids come from manifest.txt next to the index.
void cmd_aggregate(const std::filesystem::path& index, const std::filesystem::path& out);

/// Generates an ensemble from the spec file and writes ensemble.csv plus
/// density_<var>.csv, impulse_<var>.csv and velocity_<var>.csv.
void cmd_agents(std::size_t count, std::uint64_t seed, const std::filesystem::path& spec, const std::filesystem::path& out_dir);

/// Parses an agents spec file ([space], [agents], [variables]).
kinetic::EnsembleSpec load_ensemble_spec(const std::filesystem::path& spec);

} // namespace efluid::cli
