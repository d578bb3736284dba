#pragma once

#include "efluid/kinetic/ensemble.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace efluid::kinetic {

/// Scalar sampling law: `constant c`, `uniform lo hi`, `normal mean sigma`.
struct Distribution {
    enum class Kind { constant, uniform, normal };
    Kind kind = Kind::constant;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Parses the textual form; errors name `key`.
Distribution parse_distribution(const std::string& text, const std::string& key);

struct EnsembleSpec {
    espace::SpaceGrid grid;
    std::vector<std::string> var_names;
    std::vector<Distribution> vars;
    /// Uniform over the box, or normal around `center` with `width`
    /// (resampled until inside the box).
    bool normal_placement = false;
    std::array<double, 3> center{};
    std::array<double, 3> width{};
    /// Each velocity component is drawn independently from this law.
    Distribution velocity;
};

/// Deterministic: same count, seed and spec give a bit-identical ensemble.
AgentEnsemble generate_ensemble(std::size_t count, std::uint64_t seed, const EnsembleSpec& spec);

} // namespace efluid::kinetic
