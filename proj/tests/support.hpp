#pragma once

#include "efluid/espace/field.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

namespace testing {

using efluid::espace::ScalarField;
using efluid::espace::SpaceGrid;
using efluid::espace::VectorField;

inline std::array<double, 3> position(const SpaceGrid& g, std::size_t n)
{
    const auto idx = g.unflat(n);
    std::array<double, 3> x{};
    for (int d = 0; d < g.dim(); ++d) x[d] = g.coord(d, idx[d]);
    return x;
}

inline ScalarField sample(const SpaceGrid& g, const std::function<double(const std::array<double, 3>&)>& f)
{
    ScalarField out(g);
    for (std::size_t n = 0; n < g.size(); ++n) out[n] = f(position(g, n));
    return out;
}

inline VectorField sample_vector(const SpaceGrid& g,
                                 const std::function<std::array<double, 3>(const std::array<double, 3>&)>& f)
{
    VectorField out(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        const auto v = f(position(g, n));
        for (int d = 0; d < g.dim(); ++d) out.component(d)[n] = v[d];
    }
    return out;
}

/// True when node n is not on a reflective wall (or the grid is periodic).
inline bool interior(const SpaceGrid& g, std::size_t n, int margin = 1)
{
    if (g.boundary() == efluid::espace::Boundary::periodic) return true;
    const auto idx = g.unflat(n);
    for (int d = 0; d < g.dim(); ++d) {
        if (idx[d] < margin || idx[d] > g.cells(d) - margin) return false;
    }
    return true;
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("efluid_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline double order(double coarse_error, double fine_error)
{
    return std::log2(coarse_error / fine_error);
}

} // namespace testing
