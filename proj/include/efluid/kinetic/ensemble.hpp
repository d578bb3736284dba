#pragma once

#include "efluid/espace/grid.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace efluid::kinetic {

/// An economic agent on e-space: risk-grade coordinates, velocity, and its
/// extensive variables (one per ensemble variable name). Unused axes are 0.
struct EParticle {
    std::array<double, 3> coords{};
    std::array<double, 3> velocity{};
    std::vector<double> vars;
};

/// Immutable, ordered set of e-particles sharing one grid and variable list.
class AgentEnsemble {
public:
    /// Rejects coordinates outside [0, X_d] and variable-count mismatches.
    AgentEnsemble(espace::SpaceGrid grid, std::vector<std::string> var_names, std::vector<EParticle> particles,
                  std::uint64_t seed = 0);

    const espace::SpaceGrid& grid() const noexcept { return grid_; }
    const std::vector<std::string>& var_names() const noexcept { return var_names_; }
    const std::vector<EParticle>& particles() const noexcept { return particles_; }
    std::size_t size() const noexcept { return particles_.size(); }
    std::size_t var_count() const noexcept { return var_names_.size(); }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Index of a variable by name; ValidationError if unknown.
    std::size_t var_index(const std::string& name) const;

    /// Flat index of the node whose control volume holds particle `p`.
    std::size_t node_of(const EParticle& p) const;

    /// N(x): particle count per node.
    std::vector<std::size_t> counts() const;

    /// Particles of `this` followed by those of `other`.
    AgentEnsemble concatenated(const AgentEnsemble& other) const;

private:
    espace::SpaceGrid grid_;
    std::vector<std::string> var_names_;
    std::vector<EParticle> particles_;
    std::uint64_t seed_;
};

/// Nearest-node index of a coordinate along one axis.
int nearest_node(const espace::SpaceGrid& grid, int axis, double x);

/// CSV: `x1[,x2[,x3]],v1[,v2[,v3]],<var_names...>`, one particle per row.
void write_ensemble_csv(const std::filesystem::path& path, const AgentEnsemble& ens);
AgentEnsemble read_ensemble_csv(const std::filesystem::path& path, const espace::SpaceGrid& grid);

} // namespace efluid::kinetic
