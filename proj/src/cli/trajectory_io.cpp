#include "efluid/cli/trajectory_io.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"

#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace efluid::cli {

namespace fs = std::filesystem;

void write_state_csv(const fs::path& path, const hydro::State& s)
{
    if (s.empty()) throw ValidationError("cannot write an empty state");
    const auto& grid = s.front().U.grid();
    std::vector<espace::NamedColumn> cols;
    for (const auto& f : s) {
        espace::require_grid(grid, f.U.grid(), "snapshot");
        cols.push_back({"U_" + f.name, f.U.values()});
        for (int d = 0; d < grid.dim(); ++d) cols.push_back({fmt::format("v{}_{}", f.name, d + 1), f.v.component(d)});
    }
    espace::write_field_csv(path, grid, cols);
}

hydro::State read_state_csv(const fs::path& path, const espace::SpaceGrid& grid, const std::vector<std::string>& fluids)
{
    const auto table = espace::read_field_csv(path, grid);
    std::size_t expected = static_cast<std::size_t>(grid.dim()) * (1 + fluids.size()) + fluids.size();
    if (table.header.size() != expected) {
        throw ValidationError(fmt::format("'{}': expected {} columns, found {}", path.string(), expected, table.header.size()));
    }
    hydro::State s;
    for (const auto& name : fluids) {
        hydro::FluidState f{name, espace::ScalarField(grid, table.numeric_column("U_" + name)), espace::VectorField(grid)};
        for (int d = 0; d < grid.dim(); ++d) {
            const auto col = table.numeric_column(fmt::format("v{}_{}", name, d + 1));
            std::copy(col.begin(), col.end(), f.v.component(d).begin());
        }
        s.push_back(std::move(f));
    }
    return s;
}

TrajectoryWriter::TrajectoryWriter(fs::path dir) : dir_(std::move(dir))
{
    fs::create_directories(dir_);
}

void TrajectoryWriter::add(double t, const hydro::State& s)
{
    const std::string name = fmt::format("snapshot_{:06d}.csv", entries_.size());
    write_state_csv(dir_ / name, s);
    entries_.emplace_back(t, name);
}

void TrajectoryWriter::finish() const
{
    espace::CsvTable t;
    t.header = {"t", "snapshot_path"};
    for (const auto& [time, name] : entries_) t.rows.push_back({espace::format_number(time), name});
    espace::write_csv(dir_ / "index.csv", t);
}

std::vector<IndexEntry> read_index(const fs::path& index_path)
{
    const auto table = espace::read_csv(index_path);
    if (table.header != std::vector<std::string>{"t", "snapshot_path"}) {
        throw ValidationError(fmt::format("'{}': index header must be 't,snapshot_path'", index_path.string()));
    }
    std::vector<IndexEntry> out;
    const auto times = table.numeric_column("t");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        fs::path p = table.rows[i][1];
        if (p.is_relative()) p = index_path.parent_path() / p;
        out.push_back({times[i], p});
    }
    if (out.empty()) throw ValidationError(fmt::format("'{}': index lists no snapshots", index_path.string()));
    return out;
}

std::vector<aggregate::Snapshot> read_trajectory(const fs::path& index_path, const espace::SpaceGrid& grid,
                                                 const std::vector<std::string>& fluids)
{
    std::vector<aggregate::Snapshot> out;
    for (const auto& e : read_index(index_path)) out.push_back({e.t, read_state_csv(e.snapshot, grid, fluids)});
    return out;
}

void write_manifest(const fs::path& path, const SimConfig& cfg, const hydro::RunSummary& summary,
                    const std::vector<std::pair<std::string, std::string>>& extra)
{
    std::string text = cfg.text;
    if (!text.empty() && text.back() != '\n') text.push_back('\n');
    text += "\n[run_info]\n";
    text += fmt::format("version = {}\n", version_string);
    text += fmt::format("steps = {}\n", summary.steps);
    text += fmt::format("dt = {}\n", espace::format_number(summary.dt));
    text += fmt::format("max_floored_cells = {}\n", summary.max_floored_cells);
    text += fmt::format("max_negative_cells = {}\n", summary.max_negative_cells);
    for (std::size_t i = 0; i < cfg.warnings.size(); ++i) text += fmt::format("warning{} = {}\n", i + 1, cfg.warnings[i]);
    for (const auto& [k, v] : extra) text += fmt::format("{} = {}\n", k, v);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError(fmt::format("cannot write '{}'", path.string()));
    os << text;
}

Manifest read_manifest(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(fmt::format("cannot read manifest '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const std::string marker = "\n[run_info]\n";
    const auto pos = text.rfind(marker);
    if (pos == std::string::npos) throw ValidationError(fmt::format("'{}': no [run_info] section", path.string()));
    // The echoed configuration ends one newline before the marker.
    std::string config_text = text.substr(0, pos);
    Manifest m{parse_sim_config(config_text, path.parent_path(), path.string()), {}};
    m.config.text = config_text;
    const IniDoc info = IniDoc::parse(text.substr(pos + 1), path.string());
    for (const auto& key : info.keys("run_info")) m.run_info[key] = *info.get("run_info", key);
    return m;
}

} // namespace efluid::cli
