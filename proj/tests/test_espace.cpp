#include "support.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"
#include "efluid/espace/operators.hpp"

#include <doctest.h>
#include <numbers>
#include <random>

using namespace efluid;
using namespace efluid::espace;
using testing::interior;
using testing::sample;
using testing::sample_vector;

namespace {

constexpr double pi = std::numbers::pi;

SpaceGrid periodic(int dim, int cells, double extent = 1.0)
{
    return SpaceGrid(dim, {extent, extent, extent}, {cells, cells, cells}, Boundary::periodic);
}

SpaceGrid reflective(int dim, int cells, double extent = 1.0)
{
    return SpaceGrid(dim, {extent, extent, extent}, {cells, cells, cells}, Boundary::reflective);
}

std::string key_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const ValidationError& e) {
        return e.key();
    }
    return "<no error>";
}

double max_error(const ScalarField& got, const std::function<double(const std::array<double, 3>&)>& exact)
{
    double err = 0.0;
    for (std::size_t n = 0; n < got.size(); ++n) err = std::max(err, std::abs(got[n] - exact(testing::position(got.grid(), n))));
    return err;
}

} // namespace

TEST_CASE("grid construction validates every field")
{
    CHECK(key_of([] { SpaceGrid(4, {1, 1, 1}, {8, 8, 8}, Boundary::periodic); }) == "space.dim");
    CHECK(key_of([] { SpaceGrid(1, {0, 1, 1}, {8, 8, 8}, Boundary::periodic); }) == "space.extent");
    CHECK(key_of([] { SpaceGrid(2, {1, -1, 1}, {8, 8, 8}, Boundary::periodic); }) == "space.extent");
    CHECK(key_of([] { SpaceGrid(1, {1, 1, 1}, {3, 8, 8}, Boundary::periodic); }) == "space.cells");
    CHECK(key_of([] { parse_boundary("open"); }) == "space.boundary");
    CHECK(parse_boundary("reflective") == Boundary::reflective);
}

TEST_CASE("point counts follow the boundary rule")
{
    const auto p = periodic(2, 8, 2.0);
    CHECK(p.size() == 64);
    CHECK(p.spacing(0) == doctest::Approx(0.25));
    const auto r = reflective(3, 4);
    CHECK(r.size() == 125);
    ScalarField f(r, 1.0);
    CHECK(f.size() == r.size());
    VectorField v(r);
    CHECK(v.component(2).size() == r.size());
    CHECK_THROWS_AS(ScalarField(r, std::vector<double>(3)), ValidationError);
}

TEST_CASE("flat index runs fastest along the first axis")
{
    const SpaceGrid g(3, {1, 2, 3}, {4, 5, 6}, Boundary::periodic);
    CHECK(g.flat({1, 0, 0}) == 1);
    CHECK(g.flat({0, 1, 0}) == 4);
    CHECK(g.flat({0, 0, 1}) == 20);
    for (std::size_t n : {0ul, 7ul, 33ul, 119ul}) CHECK(g.flat(g.unflat(n)) == n);
}

TEST_CASE("derivatives of a constant vanish on every grid")
{
    for (int dim = 1; dim <= 3; ++dim) {
        for (const auto& g : {periodic(dim, 6), reflective(dim, 6)}) {
            const ScalarField c(g, 3.7);
            CHECK(gradient(c).max_norm() == 0.0);
            CHECK(laplacian(c).max_abs() == 0.0);
            const VectorField u(g, -1.25);
            // a constant normal component is not zero on the wall, so the first
            // node in from a wall sees the mismatch too
            const auto div = divergence(u);
            for (std::size_t n = 0; n < g.size(); ++n)
                if (interior(g, n, 2)) CHECK(div[n] == 0.0);
            if (dim == 3) CHECK(curl(u).max_norm() == 0.0);
        }
    }
}

TEST_CASE("gradient of a sine converges at second order")
{
    auto err = [](int cells) {
        const double X = 2.0;
        const auto g = periodic(1, cells, X);
        const double k = 2.0 * pi / X;
        const auto grad = gradient(sample(g, [&](const auto& x) { return std::sin(k * x[0]); }));
        ScalarField gx(g, std::vector<double>(grad.component(0).begin(), grad.component(0).end()));
        return max_error(gx, [&](const auto& x) { return k * std::cos(k * x[0]); });
    };
    const double e64 = err(64), e128 = err(128);
    CHECK(e64 < 0.01);
    const double p = testing::order(e64, e128);
    CHECK(p >= 1.8);
    CHECK(p <= 2.2);
}

TEST_CASE("affine fields are differentiated exactly away from walls")
{
    const auto g = reflective(2, 10, 3.0);
    const auto f = sample(g, [](const auto& x) { return 2.0 * x[0] - 3.0 * x[1] + 0.5; });
    const auto grad = gradient(f);
    const auto v = sample_vector(g, [](const auto& x) { return std::array<double, 3>{x[0], 2.0 * x[1] + 1.0, 0.0}; });
    const auto div = divergence(v);
    for (std::size_t n = 0; n < g.size(); ++n) {
        if (interior(g, n)) {
            CHECK(std::abs(grad.component(0)[n] - 2.0) <= 1e-12);
            CHECK(std::abs(grad.component(1)[n] + 3.0) <= 1e-12);
        }
        if (interior(g, n, 2)) CHECK(std::abs(div[n] - 3.0) <= 1e-12);
    }

    const auto line = reflective(1, 16);
    const auto gx = gradient(sample(line, [](const auto& x) { return x[0]; }));
    const auto dx = divergence(sample_vector(line, [](const auto& x) { return std::array<double, 3>{x[0], 0, 0}; }));
    for (std::size_t n = 1; n + 1 < line.size(); ++n) {
        CHECK(std::abs(gx.component(0)[n] - 1.0) <= 1e-12);
        if (n + 2 < line.size()) CHECK(std::abs(dx[n] - 1.0) <= 1e-12);
    }
}

TEST_CASE("reflective walls: zero normal derivative for scalars, odd extension for normal velocity")
{
    const auto g = reflective(1, 8);
    const auto f = sample(g, [](const auto& x) { return x[0] * x[0]; });
    const auto grad = gradient(f);
    CHECK(grad.component(0)[0] == 0.0);
    CHECK(grad.component(0)[g.size() - 1] == 0.0);
    // v = 1 everywhere is odd-extended: the ghost beyond x = 0 is -1.
    const auto div = divergence(VectorField(g, 1.0));
    CHECK(div[0] == doctest::Approx(1.0 / g.spacing(0)));
}

TEST_CASE("divergence of a 2D shear wave converges at second order")
{
    auto err = [](int cells) {
        const auto g = periodic(2, cells);
        const double k = 2.0 * pi;
        const auto v = sample_vector(g, [&](const auto& x) { return std::array<double, 3>{std::sin(k * x[0]), 0.0, 0.0}; });
        return max_error(divergence(v), [&](const auto& x) { return k * std::cos(k * x[0]); });
    };
    const double p = testing::order(err(32), err(64));
    CHECK(p >= 1.8);
    CHECK(p <= 2.2);
}

TEST_CASE("laplacian of a sine approaches -k^2 sin at second order")
{
    auto err = [](int cells) {
        const auto g = periodic(1, cells);
        const double k = 4.0 * pi;
        const auto lap = laplacian(sample(g, [&](const auto& x) { return std::sin(k * x[0]); }));
        return max_error(lap, [&](const auto& x) { return -k * k * std::sin(k * x[0]); });
    };
    const double p = testing::order(err(64), err(128));
    CHECK(p >= 1.8);
    CHECK(p <= 2.2);
}

TEST_CASE("vector laplacian acts componentwise")
{
    const auto g = periodic(2, 32);
    const double k = 2.0 * pi;
    const auto v = sample_vector(g, [&](const auto& x) { return std::array<double, 3>{std::sin(k * x[1]), std::cos(k * x[0]), 0}; });
    const auto lap = vector_laplacian(v);
    const auto l0 = laplacian(ScalarField(g, std::vector<double>(v.component(0).begin(), v.component(0).end())));
    const auto l1 = laplacian(ScalarField(g, std::vector<double>(v.component(1).begin(), v.component(1).end())));
    for (std::size_t n = 0; n < g.size(); ++n) {
        CHECK(lap.component(0)[n] == l0[n]);
        CHECK(lap.component(1)[n] == l1[n]);
    }
}

TEST_CASE("curl of a periodic shear flow")
{
    auto err = [](int cells) {
        const auto g = periodic(3, cells);
        const double k = 2.0 * pi;
        // v = (sin ky, 0, 0) -> curl = (0, 0, -k cos ky)
        const auto c = curl(sample_vector(g, [&](const auto& x) { return std::array<double, 3>{std::sin(k * x[1]), 0, 0}; }));
        double e = 0.0;
        for (std::size_t n = 0; n < g.size(); ++n) {
            const auto x = testing::position(g, n);
            e = std::max({e, std::abs(c.component(0)[n]), std::abs(c.component(1)[n]),
                          std::abs(c.component(2)[n] + k * std::cos(k * x[1]))});
        }
        return e;
    };
    const double p = testing::order(err(16), err(32));
    CHECK(p >= 1.8);
    CHECK(p <= 2.2);
}

TEST_CASE("curl needs three dimensions")
{
    const auto g = periodic(2, 8);
    try {
        curl(VectorField(g));
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(e.key().find("rot_v") != std::string::npos);
    }
}

TEST_CASE("periodic divergence telescopes to zero")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int dim = 1; dim <= 3; ++dim) {
        const auto g = periodic(dim, 8);
        VectorField v(g);
        for (int d = 0; d < dim; ++d)
            for (auto& x : v.component(d)) x = u(rng);
        const auto div = divergence(v);
        double sum = 0.0, mag = 0.0;
        for (std::size_t n = 0; n < g.size(); ++n) {
            sum += div[n];
            mag += std::abs(div[n]);
        }
        CHECK(std::abs(sum) <= 1e-10 * mag);
    }
}

TEST_CASE("operators leave their inputs untouched")
{
    const auto g = reflective(2, 6);
    const auto f = sample(g, [](const auto& x) { return std::exp(x[0]) * x[1]; });
    const std::vector<double> before(f.values().begin(), f.values().end());
    (void)gradient(f);
    (void)laplacian(f);
    CHECK(std::equal(before.begin(), before.end(), f.values().begin()));
}

TEST_CASE("mismatched grids are rejected")
{
    const auto a = periodic(1, 8);
    const auto b = periodic(1, 16);
    ScalarField f(a, 1.0);
    CHECK_THROWS_AS(f.add_scaled(ScalarField(b, 1.0), 1.0), ValidationError);
    VectorField v(a);
    CHECK_THROWS_AS(v.add_scaled(VectorField(b), 1.0), ValidationError);
    CHECK_THROWS_AS(scale_pointwise(ScalarField(b), v), ValidationError);
}

TEST_CASE("nonfinite entries are reported as numerical errors")
{
    const auto g = periodic(1, 8);
    ScalarField f(g, 0.0);
    f[3] = std::nan("");
    CHECK_THROWS_AS(require_finite(f, "U"), NumericalError);
    VectorField v(g);
    v.component(0)[5] = INFINITY;
    CHECK_THROWS_AS(require_finite(v, "v"), NumericalError);
}

TEST_CASE("numbers are written with 17 significant digits")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-2.0) == "-2");
    CHECK(format_optional(std::nullopt).empty());
    CHECK(parse_number(" 1e-3 ", "x") == 1e-3);
    CHECK_THROWS_AS(parse_number("1,5", "x"), ValidationError);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(parse_number(format_number(x), "x") == x);
    }
}

TEST_CASE("field CSV layout and round trip")
{
    const auto dir = testing::scratch("espace_csv");
    const SpaceGrid g(2, {1.0, 2.0, 1.0}, {4, 4, 4}, Boundary::periodic);
    const auto f = sample(g, [](const auto& x) { return x[0] + 10.0 * x[1] + 1.0 / 3.0; });
    write_field_csv(dir / "f.csv", f, "U");
    const std::string text = testing::slurp(dir / "f.csv");
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.rfind("x1,x2,U\n0,0,0.33333333333333331\n0.25,0,", 0) == 0);

    const auto t = read_field_csv(dir / "f.csv", g);
    REQUIRE(t.rows.size() == g.size());
    const auto back = t.numeric_column("U");
    for (std::size_t n = 0; n < g.size(); ++n) CHECK(back[n] == f[n]);

    const auto v = sample_vector(g, [](const auto& x) { return std::array<double, 3>{x[1], -x[0], 0}; });
    write_field_csv(dir / "v.csv", v, "P");
    const auto tv = read_field_csv(dir / "v.csv", g);
    CHECK(tv.header == std::vector<std::string>{"x1", "x2", "P_1", "P_2"});

    CHECK_THROWS_AS(read_field_csv(dir / "f.csv", periodic(2, 8)), ValidationError);
    CHECK_THROWS_AS(read_field_csv(dir / "f.csv", SpaceGrid(2, {2.0, 2.0, 1.0}, {4, 4, 4}, Boundary::periodic)), ValidationError);
}

TEST_CASE("weighted divergence sums to zero on closed and periodic grids")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int dim = 1; dim <= 3; ++dim) {
        for (const auto& g : {periodic(dim, 7), reflective(dim, 7)}) {
            VectorField v(g);
            for (int d = 0; d < dim; ++d)
                for (auto& x : v.component(d)) x = u(rng);
            const auto div = divergence(v);
            double sum = 0.0, scale = 0.0;
            for (std::size_t n = 0; n < g.size(); ++n) {
                sum += g.node_volume(n) * div[n];
                scale += g.node_volume(n) * std::abs(div[n]);
            }
            CHECK(std::abs(sum) <= 1e-14 * scale);
        }
    }
}
