#pragma once

#include "efluid/aggregate/series.hpp"
#include "efluid/cli/config.hpp"
#include "efluid/hydro/integrator.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace efluid::cli {

/// Snapshot CSV with columns `x...,U_<f>,v<f>_1..` for each fluid in order.
void write_state_csv(const std::filesystem::path& path, const hydro::State& s);
hydro::State read_state_csv(const std::filesystem::path& path, const espace::SpaceGrid& grid,
                            const std::vector<std::string>& fluids);

/// Streams snapshots of a run into a directory and records the index file.
class TrajectoryWriter {
public:
    explicit TrajectoryWriter(std::filesystem::path dir);

    void add(double t, const hydro::State& s);
    /// Writes `index.csv` (`t,snapshot_path`, paths relative to the directory).
    void finish() const;

    const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    std::filesystem::path dir_;
    std::vector<std::pair<double, std::string>> entries_;
};

struct IndexEntry {
    double t;
    std::filesystem::path snapshot;
};

std::vector<IndexEntry> read_index(const std::filesystem::path& index_path);

std::vector<aggregate::Snapshot> read_trajectory(const std::filesystem::path& index_path, const espace::SpaceGrid& grid,
                                                 const std::vector<std::string>& fluids);

/// `manifest.txt`: the configuration text verbatim followed by a [run_info]
/// section (version, step count, dt, floor and negative-density diagnostics).
void write_manifest(const std::filesystem::path& path, const SimConfig& cfg, const hydro::RunSummary& summary,
                    const std::vector<std::pair<std::string, std::string>>& extra);

struct Manifest {
    SimConfig config;
    std::map<std::string, std::string> run_info;
};

Manifest read_manifest(const std::filesystem::path& path);

} // namespace efluid::cli
