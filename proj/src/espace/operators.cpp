#include "efluid/espace/operators.hpp"

#include "efluid/errors.hpp"

namespace efluid::espace {

namespace {

// Walks every 1D line of nodes along `axis` and hands (line start, stride,
// count) to `fn`.
template <typename Fn>
void for_each_line(const SpaceGrid& grid, int axis, Fn&& fn)
{
    const std::size_t stride = grid.stride(axis);
    const int count = grid.points(axis);
    const std::size_t outer = grid.size() / (stride * count);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t s = 0; s < stride; ++s) {
            fn(o * stride * count + s, stride, count);
        }
    }
}

struct Neighbours {
    double minus;
    double plus;
};

inline Neighbours neighbours(const SpaceGrid& grid, std::span<const double> f, std::size_t base, std::size_t stride,
                             int count, int i, Parity parity)
{
    auto at = [&](int j) { return f[base + static_cast<std::size_t>(j) * stride]; };
    if (grid.boundary() == Boundary::periodic) {
        const int im = i == 0 ? count - 1 : i - 1;
        const int ip = i == count - 1 ? 0 : i + 1;
        return {at(im), at(ip)};
    }
    if (parity == Parity::even) {
        const double minus = i == 0 ? at(1) : at(i - 1);
        const double plus = i == count - 1 ? at(count - 2) : at(i + 1);
        return {minus, plus};
    }
    // odd about the wall means the wall value itself is zero; reading it as
    // such keeps the flux divergence telescoping to exactly nothing
    auto odd_at = [&](int j) { return j == 0 || j == count - 1 ? 0.0 : at(j); };
    const double minus = i == 0 ? -odd_at(1) : odd_at(i - 1);
    const double plus = i == count - 1 ? -odd_at(count - 2) : odd_at(i + 1);
    return {minus, plus};
}

} // namespace

std::vector<double> partial(const SpaceGrid& grid, std::span<const double> f, int axis, Parity parity)
{
    std::vector<double> out(f.size(), 0.0);
    const double inv = 1.0 / (2.0 * grid.spacing(axis));
    for_each_line(grid, axis, [&](std::size_t base, std::size_t stride, int count) {
        for (int i = 0; i < count; ++i) {
            const auto nb = neighbours(grid, f, base, stride, count, i, parity);
            out[base + static_cast<std::size_t>(i) * stride] = (nb.plus - nb.minus) * inv;
        }
    });
    return out;
}

std::vector<double> second_partial(const SpaceGrid& grid, std::span<const double> f, int axis, Parity parity)
{
    std::vector<double> out(f.size(), 0.0);
    const double dx = grid.spacing(axis);
    const double inv = 1.0 / (dx * dx);
    for_each_line(grid, axis, [&](std::size_t base, std::size_t stride, int count) {
        for (int i = 0; i < count; ++i) {
            const std::size_t n = base + static_cast<std::size_t>(i) * stride;
            const auto nb = neighbours(grid, f, base, stride, count, i, parity);
            double centre = f[n];
            if (parity == Parity::odd && grid.boundary() == Boundary::reflective && (i == 0 || i == count - 1))
                centre = 0.0;
            out[n] = (nb.plus - 2.0 * centre + nb.minus) * inv;
        }
    });
    return out;
}

VectorField gradient(const ScalarField& f)
{
    const SpaceGrid& g = f.grid();
    VectorField out(g);
    for (int d = 0; d < g.dim(); ++d) {
        auto comp = partial(g, f.values(), d, Parity::even);
        std::copy(comp.begin(), comp.end(), out.component(d).begin());
    }
    return out;
}

ScalarField divergence(const VectorField& v)
{
    const SpaceGrid& g = v.grid();
    ScalarField out(g);
    for (int d = 0; d < g.dim(); ++d) {
        const auto comp = partial(g, v.component(d), d, Parity::odd);
        for (std::size_t n = 0; n < comp.size(); ++n) out[n] += comp[n];
    }
    return out;
}

ScalarField laplacian(const ScalarField& f)
{
    const SpaceGrid& g = f.grid();
    ScalarField out(g);
    for (int d = 0; d < g.dim(); ++d) {
        const auto comp = second_partial(g, f.values(), d, Parity::even);
        for (std::size_t n = 0; n < comp.size(); ++n) out[n] += comp[n];
    }
    return out;
}

VectorField vector_laplacian(const VectorField& v)
{
    const SpaceGrid& g = v.grid();
    VectorField out(g);
    for (int c = 0; c < g.dim(); ++c) {
        auto dst = out.component(c);
        for (int d = 0; d < g.dim(); ++d) {
            const auto comp = second_partial(g, v.component(c), d, c == d ? Parity::odd : Parity::even);
            for (std::size_t n = 0; n < comp.size(); ++n) dst[n] += comp[n];
        }
    }
    return out;
}

VectorField curl(const VectorField& v)
{
    const SpaceGrid& g = v.grid();
    if (g.dim() != 3) {
        throw ValidationError("model.term (rot_v)", "curl needs a 3-dimensional space (space.dim = 3)");
    }
    // d(v_c)/dx_d; component c is tangential to axis d here (c != d).
    auto dd = [&](int c, int d) { return partial(g, v.component(c), d, Parity::even); };
    const auto dz_dy = dd(2, 1), dy_dz = dd(1, 2);
    const auto dx_dz = dd(0, 2), dz_dx = dd(2, 0);
    const auto dy_dx = dd(1, 0), dx_dy = dd(0, 1);
    VectorField out(g);
    auto x = out.component(0), y = out.component(1), z = out.component(2);
    for (std::size_t n = 0; n < g.size(); ++n) {
        x[n] = dz_dy[n] - dy_dz[n];
        y[n] = dx_dz[n] - dz_dx[n];
        z[n] = dy_dx[n] - dx_dy[n];
    }
    return out;
}

VectorField advective_derivative(const VectorField& a, const VectorField& b)
{
    require_grid(a.grid(), b.grid(), "advective_derivative");
    const SpaceGrid& g = a.grid();
    VectorField out(g);
    for (int c = 0; c < g.dim(); ++c) {
        auto dst = out.component(c);
        for (int d = 0; d < g.dim(); ++d) {
            const auto db = partial(g, b.component(c), d, c == d ? Parity::odd : Parity::even);
            const auto ad = a.component(d);
            for (std::size_t n = 0; n < db.size(); ++n) dst[n] += ad[n] * db[n];
        }
    }
    return out;
}

VectorField scale_pointwise(const ScalarField& s, const VectorField& v)
{
    require_grid(s.grid(), v.grid(), "scale_pointwise");
    VectorField out = v;
    for (int d = 0; d < v.dim(); ++d) {
        auto c = out.component(d);
        for (std::size_t n = 0; n < c.size(); ++n) c[n] *= s[n];
    }
    return out;
}

} // namespace efluid::espace
