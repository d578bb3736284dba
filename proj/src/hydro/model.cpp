#include "efluid/hydro/model.hpp"

#include "efluid/errors.hpp"

#include <fmt/format.h>

namespace efluid::hydro {

void add_scaled(State& dst, const State& src, double scale)
{
    if (dst.size() != src.size()) throw ValidationError("state layouts differ");
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i].U.add_scaled(src[i].U, scale);
        dst[i].v.add_scaled(src[i].v, scale);
    }
}

State zeros_like(const State& like)
{
    State out;
    out.reserve(like.size());
    for (const auto& f : like) {
        out.push_back({f.name, espace::ScalarField(f.U.grid()), espace::VectorField(f.U.grid())});
    }
    return out;
}

std::size_t find_fluid(const State& s, const std::string& name)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].name == name) return i;
    }
    throw ValidationError(fmt::format("unknown fluid '{}'", name));
}

void require_finite(const State& s, const std::string& what)
{
    for (const auto& f : s) {
        espace::require_finite(f.U, fmt::format("{}: U_{}", what, f.name));
        espace::require_finite(f.v, fmt::format("{}: v_{}", what, f.name));
    }
}

std::size_t negative_density_cells(const State& s)
{
    std::size_t n = 0;
    for (const auto& f : s)
        for (double u : f.U.values()) n += u < 0.0;
    return n;
}

double density_floor(const espace::ScalarField& U)
{
    const double m = U.max_abs();
    return 1e-12 * (m > 0.0 ? m : 1.0);
}

} // namespace efluid::hydro
