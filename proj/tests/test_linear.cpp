#include "support.hpp"

#include "efluid/errors.hpp"
#include "efluid/hydro/integrator.hpp"
#include "efluid/linear/biwave.hpp"
#include "efluid/linear/dispersion_io.hpp"
#include "efluid/linear/linear_rhs.hpp"
#include "efluid/linear/measurement.hpp"
#include "efluid/linear/modes.hpp"
#include "efluid/linear/symbol.hpp"

#include <Eigen/Dense>
#include <doctest.h>
#include <numbers>

using namespace efluid;
using namespace efluid::linear;
using espace::Boundary;
using espace::ScalarField;
using espace::SpaceGrid;
using espace::VectorField;
using hydro::ConjugateParams;
using cplx = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

const ConjugateParams waves = ConjugateParams::make(0.1, 0.5, 10.0, -0.1);
const ConjugateParams growth = ConjugateParams::make(0.1, 0.5, 4.0, -1.0);

// Plane-wave matrix of the perturbation system: omega x = k M x for
// x = (q_I, q_C, v_I, v_C). Built straight from the four linear equations.
Eigen::Matrix4d plane_wave_matrix(const ConjugateParams& p)
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 2) = p.u_i0;
    m(0, 3) = -p.alpha_c;
    m(1, 2) = -p.alpha_i;
    m(1, 3) = p.u_c0;
    m(2, 1) = -p.beta_c / p.u_i0;
    m(3, 0) = -p.beta_i / p.u_c0;
    return m;
}

// Companion matrix of omega^4 - a k^2 omega^2 + b k^4.
Eigen::Vector4cd companion_roots(double a, double b, double k)
{
    Eigen::Matrix4d c = Eigen::Matrix4d::Zero();
    c(1, 0) = c(2, 1) = c(3, 2) = 1.0;
    c(0, 3) = -b * k * k * k * k;
    c(2, 3) = a * k * k;
    return Eigen::EigenSolver<Eigen::Matrix4d>(c).eigenvalues();
}

double nearest(const Eigen::Vector4cd& set, cplx z)
{
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) d = std::min(d, std::abs(set[i] - z));
    return d;
}

} // namespace

TEST_CASE("bi-wave coefficients of the reference parameter sets")
{
    const auto zero = biwave_coeffs(ConjugateParams::make(1.0, 1.0, 1.0, -1.0));
    CHECK(zero.a == 0.0);
    CHECK(zero.b == 0.0);
    CHECK(classify_by_signs(zero.a, zero.b) == Regime::degenerate);

    // hand arithmetic: 0.5*10 + 0.1*(-0.1) and (-0.1)(10)(0.05 - 1)
    const auto w = biwave_coeffs(waves);
    CHECK(w.a == doctest::Approx(4.99).epsilon(1e-14));
    CHECK(w.b == doctest::Approx(0.95).epsilon(1e-14));
    CHECK(w.a * w.a > 4 * w.b);
    CHECK_FALSE(w.general_form);

    const auto gr = biwave_coeffs(growth);
    CHECK(gr.a == doctest::Approx(1.9).epsilon(1e-14));
    CHECK(gr.b == doctest::Approx(3.8).epsilon(1e-14));
    CHECK(gr.a * gr.a < 4 * gr.b);
}

TEST_CASE("unit backgrounds reduce to the normalized form exactly")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    for (int i = 0; i < 200; ++i) {
        const auto p = ConjugateParams::make(u(rng), u(rng), u(rng), -u(rng));
        const auto g = biwave_coeffs(p);
        const auto n = normalized_biwave_coeffs(p);
        CHECK(g.a == n.a);
        CHECK(g.b == n.b);
        CHECK_FALSE(g.general_form);
    }
}

TEST_CASE("general-form coefficients agree with the plane-wave eigenvalues")
{
    // eigenvalues lambda of M solve lambda^4 - a lambda^2 + b = 0, so
    // sum lambda^2 = 2a and prod lambda = b
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 100; ++i) {
        const auto p = ConjugateParams::make(u(rng), u(rng), u(rng), -u(rng), u(rng), u(rng));
        const auto c = biwave_coeffs(p);
        CHECK(c.general_form == (p.u_i0 != 1.0 || p.u_c0 != 1.0));
        const Eigen::Vector4cd ev = Eigen::EigenSolver<Eigen::Matrix4d>(plane_wave_matrix(p)).eigenvalues();
        cplx sum2 = 0.0, prod = 1.0;
        for (int j = 0; j < 4; ++j) {
            sum2 += ev[j] * ev[j];
            prod *= ev[j];
        }
        const double scale = 1.0 + std::abs(c.a) + std::sqrt(std::abs(c.b));
        CHECK(std::abs(sum2 - 2.0 * c.a) <= 1e-10 * scale * scale);
        CHECK(std::abs(prod - c.b) <= 1e-10 * scale * scale * scale * scale);
    }
}

TEST_CASE("dispersion with integer speeds")
{
    const auto d = dispersion({5.0, 4.0, false}, 1.0);
    CHECK(d.regime == Regime::two_real_speeds);
    REQUIRE(d.c1_sq);
    REQUIRE(d.c2_sq);
    CHECK(*d.c1_sq == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(*d.c2_sq == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(d.gamma);
    const double expect[] = {2.0, -2.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(d.roots[i].real() == doctest::Approx(expect[i]).epsilon(1e-15));
        CHECK(d.roots[i].imag() == 0.0);
    }
    CHECK_THROWS_AS(dispersion({5.0, 4.0, false}, 0.0), ValidationError);
}

TEST_CASE("dispersion of the wave parameter set")
{
    const auto c = biwave_coeffs(waves);
    const auto d = dispersion(c, 1.0);
    REQUIRE(d.regime == Regime::two_real_speeds);
    // quadratic formula by hand: (4.99 +- sqrt(21.1001)) / 2
    CHECK(*d.c1_sq == doctest::Approx(4.792).epsilon(1e-4));
    CHECK(*d.c2_sq == doctest::Approx(0.198).epsilon(1e-3));
    for (const auto& w : d.roots) CHECK(quartic_residual(c, 1.0, w) < 1e-12 * std::max(1.0, std::pow(std::abs(w), 4)));
}

TEST_CASE("dispersion of the growth parameter set")
{
    const auto c = biwave_coeffs(growth);
    for (double k : {0.3, 1.0, 2 * pi, 40.0}) {
        const auto d = dispersion(c, k);
        CHECK(d.regime == Regime::growing_modes);
        REQUIRE(d.gamma);
        CHECK(*d.gamma > 0.0);
        double top = 0.0;
        for (const auto& w : d.roots) {
            CHECK(w.imag() != 0.0);
            top = std::max(top, w.imag());
        }
        CHECK(*d.gamma == top);
        CHECK_FALSE(d.c1_sq);
    }
}

TEST_CASE("dispersion roots: residual, pairing, Vieta, homogeneity, companion oracle")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ua(-6.0, 6.0), uk(0.01, 20.0);
    int real_cases = 0, growing_cases = 0;
    for (int i = 0; i < 2000; ++i) {
        const BiWaveCoeffs c{ua(rng), ua(rng), false};
        const double k = uk(rng) * (i % 2 ? 1.0 : -1.0);
        const auto d = dispersion(c, k);
        for (const auto& w : d.roots) CHECK(quartic_residual(c, k, w) < 1e-9 * std::max(1.0, std::pow(std::abs(w), 4)));
        CHECK(d.roots[1] == -d.roots[0]);
        CHECK(d.roots[3] == -d.roots[2]);
        CHECK(d.regime == classify_by_signs(c.a, c.b));
        if (d.regime == Regime::two_real_speeds) {
            ++real_cases;
            CHECK(*d.c1_sq + *d.c2_sq == doctest::Approx(c.a).epsilon(1e-12));
            CHECK(*d.c1_sq * *d.c2_sq == doctest::Approx(c.b).epsilon(1e-12));
        }
        if (d.regime == Regime::growing_modes) ++growing_cases;

        const auto twice = dispersion(c, 2 * k);
        for (int j = 0; j < 4; ++j) CHECK(std::abs(twice.roots[j] - 2.0 * d.roots[j]) <= 1e-12 * std::abs(twice.roots[j]));

        const auto oracle = companion_roots(c.a, c.b, k);
        const double scale = std::abs(k) * std::sqrt(std::abs(c.a) + std::sqrt(std::abs(c.b)));
        for (const auto& w : d.roots) CHECK(nearest(oracle, w) <= 1e-6 * scale);
    }
    CHECK(real_cases > 100);
    CHECK(growing_cases > 100);
}

TEST_CASE("closed-form growth rates versus the quartic roots")
{
    // a = 0, b = 1: closed forms give sqrt(4)/8 for both; the roots of
    // omega^4 + 1 = 0 have (Re)^2 = (Im)^2 = 1/2
    const auto g = compare_growth_formulas(0.0, 1.0, 1.0);
    CHECK(g.closed_form.omega_sq == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.closed_form.gamma_sq == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.root_omega_sq == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.root_gamma_sq == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.omega_sq_discrepancy == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(g.gamma_sq_discrepancy == doctest::Approx(-0.25).epsilon(1e-13));
    // brute force: omega^4 = -1 from the companion matrix
    const auto oracle = companion_roots(0.0, 1.0, 1.0);
    for (int i = 0; i < 4; ++i) {
        CHECK(oracle[i].real() * oracle[i].real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(oracle[i].imag() * oracle[i].imag() == doctest::Approx(0.5).epsilon(1e-12));
    }

    // boundary a^2 = 4b: both give omega^2 = a k^2 / 2 and no growth
    const double a = 2.0, k = 1.5;
    const auto edge = compare_growth_formulas(a, 1.0, k);
    CHECK(edge.closed_form.omega_sq == doctest::Approx(a * k * k / 2).epsilon(1e-12));
    CHECK(edge.root_omega_sq == doctest::Approx(a * k * k / 2).epsilon(1e-12));
    CHECK(edge.closed_form.gamma_sq == 0.0);
    const auto inside = compare_growth_formulas(a, a * a / (4.0 * (1.0 - 1e-9)), k);
    CHECK(inside.closed_form.omega_sq == doctest::Approx(a * k * k / 2).epsilon(1e-6));
    CHECK(inside.root_omega_sq == doctest::Approx(a * k * k / 2).epsilon(1e-6));
    CHECK(std::abs(inside.closed_form.gamma_sq) < 1e-6);
    CHECK(std::abs(inside.root_gamma_sq) < 1e-6);
    CHECK(std::abs(inside.omega_sq_discrepancy) < 1e-6);
    CHECK_THROWS_AS(compare_growth_formulas(a, a * a / (4.0 * (1.0 + 1e-9)), k), ValidationError);
    CHECK_THROWS_AS(compare_growth_formulas(4.99, 0.95, 1.0), ValidationError);

    // the growth set: a row with both sides, roots checked against the companion matrix
    const auto row = compare_growth_formulas(1.9, 3.8, 2.0);
    const auto roots = companion_roots(1.9, 3.8, 2.0);
    double re2 = 0.0, im2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        re2 = std::max(re2, roots[i].real() * roots[i].real());
        im2 = std::max(im2, roots[i].imag() * roots[i].imag());
    }
    CHECK(row.root_omega_sq == doctest::Approx(re2).epsilon(1e-10));
    CHECK(row.root_gamma_sq == doctest::Approx(im2).epsilon(1e-10));
    const double r = std::sqrt(4 * 3.8 + 3 * 1.9 * 1.9);
    CHECK(row.closed_form.omega_sq == doctest::Approx(4.0 * (r + 3.8) / 8).epsilon(1e-15));
    CHECK(row.closed_form.gamma_sq == doctest::Approx(4.0 * (r - 3.8) / 8).epsilon(1e-15));
    CHECK(row.omega_sq_discrepancy == row.closed_form.omega_sq - row.root_omega_sq);
}

TEST_CASE("linear right-hand side")
{
    const auto g = SpaceGrid::line(1.0, 64, Boundary::periodic);
    const auto p = ConjugateParams::make(0.1, 0.5, 10.0, -0.1, 2.0, 0.5);
    const ScalarField zero(g);
    const VectorField still(g);

    const auto z = linear_rhs(zero, zero, still, still, p);
    CHECK(z.dq_i.max_abs() == 0.0);
    CHECK(z.dq_c.max_abs() == 0.0);
    CHECK(z.dv_i.max_norm() == 0.0);
    CHECK(z.dv_c.max_norm() == 0.0);

    const double k = 6 * pi, dx = g.spacing(0);
    const auto qc = testing::sample(g, [&](const auto& x) { return std::sin(k * x[0]); });
    const auto d = linear_rhs(zero, qc, still, still, p);
    CHECK(d.dq_i.max_abs() == 0.0);
    CHECK(d.dq_c.max_abs() == 0.0);
    CHECK(d.dv_c.max_norm() == 0.0);
    double err = 0.0, cont = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        const double x = g.coord(0, static_cast<int>(n));
        const double centred = (std::sin(k * (x + dx)) - std::sin(k * (x - dx))) / (2 * dx);
        err = std::max(err, std::abs(d.dv_i.component(0)[n] - p.beta_c / p.u_i0 * centred));
        cont = std::max(cont, std::abs(d.dv_i.component(0)[n] - p.beta_c / p.u_i0 * k * std::cos(k * x)));
    }
    CHECK(err < 1e-12);
    CHECK(cont < 0.02 * std::abs(p.beta_c / p.u_i0) * k);

    const auto other = SpaceGrid::line(1.0, 32, Boundary::periodic);
    CHECK_THROWS_AS(linear_rhs(zero, ScalarField(other), still, still, p), ValidationError);
}

TEST_CASE("an eigenmode returns after one period scaled by its phase factor")
{
    const auto g = SpaceGrid::line(1.0, 64, Boundary::periodic);
    const double k = 2 * pi;
    for (const auto* p : {&waves, &growth}) {
        for (int branch : {1, 2}) {
            const auto mode = discrete_eigenmode(*p, g, k, branch);
            const double T = 2 * pi / std::abs(mode.omega.real());
            const auto s0 = plane_wave_state(g, *p, mode, 1.0, 0.0, false);
            hydro::RunSettings rs;
            rs.t_end = T;
            rs.cfl_fraction = 0.25;
            rs.snapshot_every = 1u << 30;
            hydro::State last;
            hydro::simulate(s0, LinearModel(*p), rs, [&](std::size_t, double, const hydro::State& s) { last = s; });
            const cplx factor = std::exp(cplx(0.0, -1.0) * mode.omega * T);
            for (std::size_t f = 0; f < 2; ++f) {
                const cplx a0 = fourier_amplitude(s0[f].U, k);
                const cplx a1 = fourier_amplitude(last[f].U, k);
                CHECK(std::abs(a1 - a0 * factor) <= 1e-3 * std::abs(a0 * factor));
                const ScalarField v0(g, std::vector<double>(s0[f].v.component(0).begin(), s0[f].v.component(0).end()));
                const ScalarField v1(g, std::vector<double>(last[f].v.component(0).begin(), last[f].v.component(0).end()));
                const cplx b0 = fourier_amplitude(v0, k), b1 = fourier_amplitude(v1, k);
                CHECK(std::abs(b1 - b0 * factor) <= 1e-3 * std::abs(b0 * factor));
            }
        }
    }
}

TEST_CASE("discrete eigenmode frequency uses the centred-difference wavenumber")
{
    const auto g = SpaceGrid::line(1.0, 16, Boundary::periodic);
    const double k = 2 * pi, dx = g.spacing(0);
    CHECK(discrete_wavenumber(k, dx) == doctest::Approx(std::sin(k * dx) / dx).epsilon(1e-15));
    const auto mode = discrete_eigenmode(waves, g, k, 1);
    const auto d = dispersion(biwave_coeffs(waves), std::sin(k * dx) / dx);
    CHECK(mode.omega.real() == doctest::Approx(d.roots[0].real()).epsilon(1e-12));
    CHECK(mode.q_i == cplx(1.0, 0.0));
    CHECK_THROWS_AS(discrete_eigenmode(waves, g, k, 3), ValidationError);
}

TEST_CASE("mode measurement on synthetic signals")
{
    const int n = 400;
    std::vector<double> t(n), x(n), y(n), flat(n, 2.5);
    std::vector<cplx> z(n);
    const double omega = 3.7, gamma = 0.15;
    for (int i = 0; i < n; ++i) {
        t[i] = 0.05 * i;
        x[i] = std::cos(omega * t[i]);
        y[i] = std::exp(gamma * t[i]) * std::cos(omega * t[i]);
        z[i] = std::exp(cplx(gamma, -omega) * t[i]);
    }
    const auto a = mode_measurement(t, x);
    REQUIRE(a.omega);
    CHECK(*a.omega == doctest::Approx(omega).epsilon(5e-3));

    const auto b = mode_measurement(t, y);
    REQUIRE(b.omega);
    REQUIRE(b.gamma);
    CHECK(*b.omega == doctest::Approx(omega).epsilon(1e-2));
    CHECK(*b.gamma == doctest::Approx(gamma).epsilon(1e-2));

    const auto c = mode_measurement(t, z);
    REQUIRE(c.omega);
    REQUIRE(c.gamma);
    CHECK(*c.omega == doctest::Approx(omega).epsilon(1e-2));
    CHECK(*c.gamma == doctest::Approx(gamma).epsilon(1e-2));

    const auto none = mode_measurement(t, flat);
    CHECK_FALSE(none.omega);
    CHECK_FALSE(none.gamma);

    CHECK_THROWS_AS(mode_measurement(std::span(t).first(15), std::span(x).first(15)), ValidationError);
    auto skewed = t;
    skewed[200] += 0.01;
    CHECK_THROWS_AS(mode_measurement(skewed, x), ValidationError);
}

TEST_CASE("symbol analysis of the conjugate pair matches the bi-wave coefficients")
{
    for (const auto* p : {&waves, &growth}) {
        for (const auto& bg : std::vector<std::array<double, 2>>{{1.0, 1.0}, {2.0, 0.5}}) {
            auto q = *p;
            q.u_i0 = bg[0];
            q.u_c0 = bg[1];
            hydro::RhsSpec spec;
            spec.terms = {{"I", hydro::Slot::q1, hydro::TermKind::div_v, q.alpha_c, "C"},
                          {"I", hydro::Slot::q2, hydro::TermKind::grad_U, q.beta_c, "C"},
                          {"C", hydro::Slot::q1, hydro::TermKind::div_v, q.alpha_i, "I"},
                          {"C", hydro::Slot::q2, hydro::TermKind::grad_U, q.beta_i, "I"}};
            const auto s = analyze_symbol(spec, {"I", "C"}, {bg[0], bg[1]}, 2 * pi);
            const auto c = biwave_coeffs(q);
            CHECK(s.a == doctest::Approx(c.a).epsilon(1e-10));
            CHECK(s.b == doctest::Approx(c.b).epsilon(1e-10));
            CHECK(s.regime == classify_by_signs(c.a, c.b));
            const auto d = dispersion(c, 2 * pi);
            if (d.gamma) CHECK(s.max_growth == doctest::Approx(*d.gamma).epsilon(1e-8));
            else CHECK(s.max_growth == 0.0);
        }
    }
}

TEST_CASE("dispersion CSV round trip")
{
    const auto dir = testing::scratch("dispersion");
    std::vector<DispersionResult> rows = dispersion_sweep(biwave_coeffs(waves), 0.5, 8.0, 7);
    const auto more = dispersion_sweep(biwave_coeffs(growth), 1.0, 1.0, 1);
    rows.insert(rows.end(), more.begin(), more.end());
    rows.push_back(dispersion({0.0, 0.0, false}, 1.0));
    REQUIRE(rows.size() == 9);
    CHECK(rows[0].k == 0.5);
    CHECK(rows[6].k == 8.0);
    write_dispersion_csv(dir / "d.csv", rows);
    const auto back = read_dispersion_csv(dir / "d.csv");
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].k == rows[i].k);
        CHECK(back[i].regime == rows[i].regime);
        for (int j = 0; j < 4; ++j) CHECK(back[i].roots[j] == rows[i].roots[j]);
        CHECK(back[i].c1_sq == rows[i].c1_sq);
        CHECK(back[i].c2_sq == rows[i].c2_sq);
        CHECK(back[i].gamma == rows[i].gamma);
    }
    const auto text = testing::slurp(dir / "d.csv");
    CHECK(text.rfind("k,re_w1,im_w1,re_w2,im_w2,re_w3,im_w3,re_w4,im_w4,regime,c1_sq,c2_sq,gamma\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);

    std::ofstream(dir / "bad.csv") << "k,re_w1,im_w1,re_w2,im_w2,re_w3,im_w3,re_w4,im_w4,regime,c1,c2_sq,gamma\n";
    try {
        read_dispersion_csv(dir / "bad.csv");
        FAIL("expected a schema error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("c1_sq") != std::string::npos);
    }
    CHECK_THROWS_AS(dispersion_sweep(biwave_coeffs(waves), 0.0, 1.0, 3), ValidationError);
}
