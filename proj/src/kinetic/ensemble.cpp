#include "efluid/kinetic/ensemble.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"

#include <cmath>
#include <fmt/format.h>

namespace efluid::kinetic {

using espace::Boundary;
using espace::SpaceGrid;

AgentEnsemble::AgentEnsemble(SpaceGrid grid, std::vector<std::string> var_names, std::vector<EParticle> particles,
                             std::uint64_t seed)
    : grid_(grid), var_names_(std::move(var_names)), particles_(std::move(particles)), seed_(seed)
{
    for (std::size_t i = 0; i < particles_.size(); ++i) {
        const EParticle& p = particles_[i];
        if (p.vars.size() != var_names_.size()) {
            throw ValidationError(fmt::format("particle {}: {} variables, ensemble declares {}", i, p.vars.size(), var_names_.size()));
        }
        for (int d = 0; d < grid_.dim(); ++d) {
            const double x = p.coords[d];
            if (!(std::isfinite(x) && x >= 0.0 && x <= grid_.extent(d))) {
                throw ValidationError(fmt::format("particle {}: coordinate x{} = {} outside [0, {}]", i, d + 1, x, grid_.extent(d)));
            }
            if (!std::isfinite(p.velocity[d])) {
                throw ValidationError(fmt::format("particle {}: nonfinite velocity component {}", i, d + 1));
            }
        }
        for (double u : p.vars) {
            if (!std::isfinite(u)) throw ValidationError(fmt::format("particle {}: nonfinite variable value", i));
        }
    }
}

std::size_t AgentEnsemble::var_index(const std::string& name) const
{
    for (std::size_t j = 0; j < var_names_.size(); ++j) {
        if (var_names_[j] == name) return j;
    }
    throw ValidationError(fmt::format("unknown ensemble variable '{}'", name));
}

int nearest_node(const SpaceGrid& grid, int axis, double x)
{
    int i = static_cast<int>(std::floor(x / grid.spacing(axis) + 0.5));
    if (grid.boundary() == Boundary::periodic) {
        if (i >= grid.cells(axis)) i -= grid.cells(axis);
        return i;
    }
    return std::min(i, grid.cells(axis));
}

std::size_t AgentEnsemble::node_of(const EParticle& p) const
{
    espace::Index3 ijk{0, 0, 0};
    for (int d = 0; d < grid_.dim(); ++d) ijk[d] = nearest_node(grid_, d, p.coords[d]);
    return grid_.flat(ijk);
}

std::vector<std::size_t> AgentEnsemble::counts() const
{
    std::vector<std::size_t> n(grid_.size(), 0);
    for (const auto& p : particles_) ++n[node_of(p)];
    return n;
}

AgentEnsemble AgentEnsemble::concatenated(const AgentEnsemble& other) const
{
    if (!(grid_ == other.grid_) || var_names_ != other.var_names_) {
        throw ValidationError("cannot concatenate ensembles on different grids or variable lists");
    }
    std::vector<EParticle> all = particles_;
    all.insert(all.end(), other.particles_.begin(), other.particles_.end());
    return AgentEnsemble(grid_, var_names_, std::move(all), seed_);
}

void write_ensemble_csv(const std::filesystem::path& path, const AgentEnsemble& ens)
{
    const int dim = ens.grid().dim();
    espace::CsvTable table;
    for (int d = 0; d < dim; ++d) table.header.push_back(fmt::format("x{}", d + 1));
    for (int d = 0; d < dim; ++d) table.header.push_back(fmt::format("v{}", d + 1));
    for (const auto& name : ens.var_names()) table.header.push_back(name);
    table.rows.reserve(ens.size());
    for (const auto& p : ens.particles()) {
        std::vector<std::string> row;
        for (int d = 0; d < dim; ++d) row.push_back(espace::format_number(p.coords[d]));
        for (int d = 0; d < dim; ++d) row.push_back(espace::format_number(p.velocity[d]));
        for (double u : p.vars) row.push_back(espace::format_number(u));
        table.rows.push_back(std::move(row));
    }
    espace::write_csv(path, table);
}

AgentEnsemble read_ensemble_csv(const std::filesystem::path& path, const SpaceGrid& grid)
{
    const auto table = espace::read_csv(path);
    const int dim = grid.dim();
    if (table.header.size() < static_cast<std::size_t>(2 * dim)) {
        throw ValidationError(fmt::format("'{}': ensemble CSV needs {} coordinate/velocity columns", path.string(), 2 * dim));
    }
    for (int d = 0; d < dim; ++d) {
        if (table.header[d] != fmt::format("x{}", d + 1) || table.header[dim + d] != fmt::format("v{}", d + 1)) {
            throw ValidationError(fmt::format("'{}': unexpected header layout", path.string()));
        }
    }
    std::vector<std::string> names(table.header.begin() + 2 * dim, table.header.end());
    std::vector<EParticle> particles;
    particles.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        EParticle p;
        for (int d = 0; d < dim; ++d) {
            p.coords[d] = espace::parse_number(row[d], table.header[d]);
            p.velocity[d] = espace::parse_number(row[dim + d], table.header[dim + d]);
        }
        for (std::size_t j = 0; j < names.size(); ++j) p.vars.push_back(espace::parse_number(row[2 * dim + j], names[j]));
        particles.push_back(std::move(p));
    }
    return AgentEnsemble(grid, std::move(names), std::move(particles));
}

} // namespace efluid::kinetic
