#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hslpp/core/errors.hpp"
#include "hslpp/core/scaling.hpp"
#include "hslpp/kernel/airy.hpp"
#include "hslpp/kernel/converge.hpp"
#include "hslpp/kernel/descent.hpp"
#include "hslpp/kernel/kgeo.hpp"
#include "hslpp/kernel/prelimit.hpp"
#include "hslpp/kernel/sg.hpp"

using namespace hslpp;
using namespace hslpp::kernel;
using std::numbers::pi;

namespace {

// n-th derivative by the Cauchy integral on a small circle (trapezoid rule, spectrally accurate).
template <class F>
cplx cauchy_derivative(const F& f, cplx z0, int n, double r = 0.05, int nodes = 128) {
    cplx s = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const cplx e = std::polar(1.0, 2.0 * pi * k / nodes);
        s += f(z0 + r * e) / std::pow(r * e, n);
    }
    return s / static_cast<double>(nodes) * std::tgamma(n + 1.0);
}

KgeoContext n1_context() {
    KgeoContext c;
    c.N = 1;
    c.q = 0.5;
    c.c = 0.5;
    c.M = {1};
    return c;
}

}  // namespace

TEST_CASE("scaling constants: kappa = 1 edge values, p = dh/dkappa, ranges") {
    const auto e = scaling_constants(0.5, 1.0);
    CHECK(e.z_c == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.h == doctest::Approx(2.0).epsilon(1e-15));
    for (double q : {0.2, 0.7}) CHECK(scaling_constants(q, 1.0).z_c == doctest::Approx(1.0).epsilon(1e-15));

    const double d = 1e-5;
    const double fd = (lln_profile(0.5, 0.25 + d) - lln_profile(0.5, 0.25 - d)) / (2 * d);
    CHECK(std::abs(fd / scaling_constants(0.5, 0.25).p - 1.0) < 1e-6);
    for (double q : {0.3, 0.5, 0.7})
        for (double k : {0.2, 0.5, 0.8}) {
            const auto c = scaling_constants(q, k);
            CHECK(c.z_c > 1.0);
            CHECK(c.z_c < 1.0 / q);
            CHECK(c.f > 0.0);
            CHECK(c.sigma > 0.0);
        }
    CHECK_THROWS_AS(scaling_constants(1.0, 0.5), ParameterError);
    CHECK_THROWS_AS(scaling_constants(0.5, 0.0), ParameterError);
}

TEST_CASE("S and G at the critical point") {
    const auto k = scaling_constants(0.5, 0.25);
    const SGFunctions sg(k);
    CHECK(std::abs(sg.Sbar(k.z_c)) < 1e-14);
    CHECK(std::abs(sg.Gbar(k.z_c)) < 1e-14);
    auto S = [&](cplx z) { return sg.S(z); };
    auto G = [&](cplx z) { return sg.G(z); };
    CHECK(std::abs(cauchy_derivative(S, k.z_c, 1)) < 1e-8);
    CHECK(std::abs(cauchy_derivative(S, k.z_c, 2)) < 1e-8);
    CHECK(std::abs(cauchy_derivative(G, k.z_c, 1)) < 1e-8);
    CHECK(std::abs(cauchy_derivative(S, k.z_c, 3).real() / (2 * std::pow(k.sigma, 3)) - 1) < 1e-6);
    CHECK(std::abs(cauchy_derivative(G, k.z_c, 2).real() / (2 * k.f * k.sigma * k.sigma) - 1) < 1e-6);
    CHECK(std::abs(sg.dS(k.z_c)) < 1e-12);
    CHECK_THROWS_AS(sg.S(cplx(-1.0, 0.0)), SingularEvaluation);
    CHECK_THROWS_AS(sg.S(cplx(0.5, 0.0)), SingularEvaluation);
    // Real parts are branch-free.
    CHECK(sg.re_Sbar(cplx(-1.0, 0.0)) == doctest::Approx(sg.re_Sbar(cplx(-1.0, 1e-13))).epsilon(1e-10));
}

TEST_CASE("spike factor") {
    const SpikeFactor none(0.5, {});
    CHECK(none.trivial());
    CHECK(none.W(cplx(0.3, 1.1)) == cplx(1.0, 0.0));
    const SpikeFactor one(0.5, {0.8});
    const cplx z(1.1, 0.4);
    const cplx expect = (1.0 - 0.8 / z) * (1.0 - 0.5 * z) / ((1.0 - 0.5 / z) * (1.0 - 0.8 * z));
    CHECK(std::abs(one.W(z) - expect) < 1e-14);
    CHECK(std::abs(std::exp(one.log_W(z)) - expect) < 1e-14);
}

TEST_CASE("kgeo N = 1 one-point function") {
    const auto ctx = n1_context();
    for (long x : {-3L, -2L, -1L, 0L, 1L, 2L, 5L}) {
        const double expect = x <= -2 ? 1.0 : x == -1 ? 0.75 : 0.75 * std::pow(0.25, x + 1);
        const auto v = kgeo(Component::K12, 1, x, 1, x, ctx);
        CHECK(std::abs(v.value.real() - expect) < 1e-10);
        CHECK(std::abs(v.value.imag()) < 1e-10);
    }
}

TEST_CASE("kgeo antisymmetry and K21") {
    KgeoContext ctx;
    ctx.N = 5;
    ctx.q = 0.5;
    ctx.c = 0.6;
    ctx.M = {2, 5};
    for (auto [u, x, v, y] : std::vector<std::array<long, 4>>{{1, 0, 2, 3}, {2, 1, 1, -1}, {1, 2, 1, 4}}) {
        const int U = static_cast<int>(u), V = static_cast<int>(v);
        for (auto c : {Component::K11, Component::K22}) {
            const auto a = kgeo(c, U, x, V, y, ctx).value, b = kgeo(c, V, y, U, x, ctx).value;
            CHECK(std::abs(a + b) < 1e-10);
        }
        const auto k12 = kgeo(Component::K12, U, x, V, y, ctx).value;
        const auto k21 = kgeo(Component::K21, V, y, U, x, ctx).value;
        CHECK(std::abs(k12 + k21) < 1e-12);
    }
}

TEST_CASE("kgeo contour deformation invariance and window checks") {
    KgeoContext ctx;
    ctx.N = 6;
    ctx.q = 0.4;
    ctx.c = 0.7;
    ctx.M = {3, 6};
    ctx.spikes = {0.9};
    const auto w = ctx.windows();
    std::mt19937 gen(2);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    const auto ref11 = kgeo(Component::K11, 1, 2, 2, 4, ctx).value;
    const auto ref12 = kgeo(Component::K12, 1, 2, 2, 4, ctx).value;
    const auto ref22 = kgeo(Component::K22, 1, 2, 2, 4, ctx).value;
    for (int rep = 0; rep < 5; ++rep) {
        KgeoRadii r = ctx.default_radii(true);
        r.r1 = w.r1_lo + u(gen) * (w.r1_hi - w.r1_lo);
        r.r12z = std::max(w.r12z_lo, w.r12w_lo) + u(gen) * (w.r12z_hi - std::max(w.r12z_lo, w.r12w_lo));
        r.r12w = w.r12w_lo + u(gen) * (r.r12z - w.r12w_lo);
        r.r2 = w.r2_lo + u(gen) * (w.r2_hi - w.r2_lo);
        CHECK(std::abs(kgeo(Component::K11, 1, 2, 2, 4, ctx, r).value - ref11) < 1e-9);
        CHECK(std::abs(kgeo(Component::K12, 1, 2, 2, 4, ctx, r).value - ref12) < 1e-9);
        CHECK(std::abs(kgeo(Component::K22, 1, 2, 2, 4, ctx, r).value - ref22) < 1e-9);
    }
    KgeoRadii bad = ctx.default_radii(true);
    bad.r1 = 0.9;
    CHECK_THROWS_AS(kgeo(Component::K11, 1, 0, 1, 1, ctx, bad), ParameterError);
    bad = ctx.default_radii(true);
    std::swap(bad.r12z, bad.r12w);
    CHECK_THROWS_AS(kgeo(Component::K12, 1, 0, 2, 1, ctx, bad), ParameterError);
    KgeoContext huge = ctx;
    huge.N = 250;
    huge.M = {250};
    CHECK_THROWS_AS(kgeo(Component::K12, 1, 0, 1, 0, huge), GuardError);
}

TEST_CASE("kgeo: a spike equal to q leaves every entry unchanged") {
    KgeoContext plain;
    plain.N = 4;
    plain.q = 0.5;
    plain.c = 0.5;
    plain.M = {2, 4};
    KgeoContext spiked = plain;
    spiked.spikes = {0.5};
    for (auto c : {Component::K11, Component::K12, Component::K22}) {
        const auto a = kgeo(c, 1, 1, 2, 2, plain).value, b = kgeo(c, 1, 1, 2, 2, spiked).value;
        CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("pre-limit kernel agrees with the exact kernel through the gauge at N = 40") {
    const auto k = scaling_constants(0.5, 0.25);
    const int N = 40;
    PrelimitConfig cfg;
    cfg.constants = k;
    cfg.N = N;
    cfg.c = 0.8;
    cfg.tail_tol = 1.0;
    const PrelimitKernel K(cfg);
    const double sc = k.sigma * k.z_c * std::cbrt(static_cast<double>(N));
    const long kN = static_cast<long>(std::floor(k.kappa * N));
    const double G = -std::log(1 - k.q * k.z_c) - k.p * std::log(k.z_c);
    for (auto [s, t] : std::vector<std::pair<double, double>>{{0.3, -0.2}, {0.0, 0.3}, {0.0, 0.0}}) {
        const long Ts = K.time_shift(s), Tt = K.time_shift(t);
        for (int dx : {-2, 0, 3})
            for (int dy : {-1, 2}) {
                const long xt = static_cast<long>(std::floor(k.h * N + k.p * Ts)) + dx;
                const long yt = static_cast<long>(std::floor(k.h * N + k.p * Tt)) + dy;
                const double x = (xt - k.h * N - k.p * Ts) / sc, y = (yt - k.h * N - k.p * Tt) / sc;
                const auto pre = K.entry(Component::K12, s, x, t, y);
                KgeoContext g;
                g.N = N;
                g.q = k.q;
                g.c = 0.8;
                int u = 1, v = 1;
                if (Ts == Tt) {
                    g.M = {static_cast<int>(kN + Ts)};
                } else if (Ts < Tt) {
                    g.M = {static_cast<int>(kN + Ts), static_cast<int>(kN + Tt)};
                    v = 2;
                } else {
                    g.M = {static_cast<int>(kN + Tt), static_cast<int>(kN + Ts)};
                    u = 2;
                }
                const auto geo = kgeo(Component::K12, u, xt, v, yt, g);
                const cplx ref = sc * std::exp(sc * (x - y) * std::log(k.z_c) - (Ts - Tt) * G) * geo.value;
                CHECK(std::abs(pre.value - ref) <= pre.tail_bound + pre.quad_error + 1e-9);
            }
    }
}

TEST_CASE("pre-limit kernel: R part, diagonal reality, skew symmetry") {
    PrelimitConfig cfg;
    cfg.constants = scaling_constants(0.5, 0.25);
    cfg.N = 1000;
    cfg.c = 0.5;
    const PrelimitKernel K(cfg);
    CHECK(K.part(PrelimitPart::R12, 0.0, 0.1, 0.3, 0.2).value == cplx(0.0, 0.0));
    CHECK(K.part(PrelimitPart::R12, 0.2, 0.1, 0.2, 0.2).value == cplx(0.0, 0.0));
    CHECK(std::abs(K.part(PrelimitPart::R12, 0.4, 0.1, 0.0, 0.2).value) > 0.0);
    CHECK(std::abs(K.part(PrelimitPart::I12, 0.2, 0.3, 0.2, 0.3).value.imag()) < 1e-8);
    const auto a = K.entry(Component::K12, 0.3, 0.5, -0.2, -0.4).value;
    const auto b = K.entry(Component::K21, -0.2, -0.4, 0.3, 0.5).value;
    CHECK(std::abs(a + b) < 1e-12);
    const auto c = K.entry(Component::K11, 0.3, 0.5, -0.2, -0.4).value;
    const auto d = K.entry(Component::K11, -0.2, -0.4, 0.3, 0.5).value;
    CHECK(std::abs(c + d) < 1e-8 * std::max(1.0, std::abs(c)));
}

TEST_CASE("Airy wanderer: classical and extended Airy special cases") {
    const double aip0 = boost::math::airy_ai_prime(0.0);
    const auto v = airy_wanderer(0, 0, 0, 0, {}, {});
    CHECK(std::abs(v.value - aip0 * aip0) < 1e-8);
    CHECK(std::abs(v.imag_residue) < 1e-10);
    CHECK(std::abs(extended_airy(0, 0, 0, 0) - aip0 * aip0) < 1e-10);
    CHECK(std::abs(airy_gaussian_term(0, 0, 1, 0) + std::exp(1.0 / 12.0) / std::sqrt(4 * pi)) < 1e-14);
    CHECK(airy_gaussian_term(1, 0, 0, 0) == 0.0);
    for (auto [t1, x1, t2, x2] : std::vector<std::array<double, 4>>{{0, 1, 1, 0}, {1, 0, 0, 0.5}, {-0.5, -1, 0.3, 2}})
        CHECK(std::abs(airy_wanderer(t1, x1, t2, x2, {}, {}).value - extended_airy(t1, x1, t2, x2)) < 1e-8);
    CHECK_THROWS_AS(airy_wanderer(0, 0, 0, 0, {-1.0}, {0.0}), ParameterError);
}

TEST_CASE("Airy wanderer: a large spike perturbs at rate Ai(x1) Ai(x2) / a") {
    // The rational factor (z - a)/(-a) differs from 1 by z/a, so the kernel moves by Ai Ai / a + O(a^-2):
    // at a = 50 the change is 2.5e-3, not negligible.
    for (auto [x1, x2] : std::vector<std::pair<double, double>>{{0, 0}, {0.5, -0.3}}) {
        const double base = airy_wanderer(0, x1, 0, x2, {}, {}).value;
        const double rate = boost::math::airy_ai(x1) * boost::math::airy_ai(x2);
        double prev = 1.0;
        for (double a : {25.0, 50.0, 100.0, 200.0}) {
            const double diff = airy_wanderer(0, x1, 0, x2, {a}, {}).value - base;
            CHECK(std::abs(diff * a / rate - 1.0) < 2.0 / a);
            CHECK(std::abs(diff) < prev);
            prev = std::abs(diff);
        }
    }
}

TEST_CASE("limit_rhs special cases") {
    const auto k = scaling_constants(0.5, 0.25);
    const auto sub = contour::Regime::Subcritical;
    CHECK(std::abs(limit_rhs(0, 0.4, 0, -0.3, k, {}, sub, 0).value - airy_kernel(0.4, -0.3)) < 1e-8);
    const double s = 0.3, x = 0.2;
    const auto diag = limit_rhs(s, x, s, x, k, {}, sub, 0).value;
    CHECK(diag > 0.0);
    CHECK(std::abs(diag - airy_wanderer(-k.f * s, x + k.f * k.f * s * s, -k.f * s, x + k.f * k.f * s * s, {}, {}).value) <
          1e-10);
    // Independent extended-Airy path.
    for (auto [a, b, c, d] : std::vector<std::array<double, 4>>{{0.3, 0.5, -0.2, -0.4}, {1, -1, 0, 2}, {-0.4, 0.1, 0.2, 0.3}}) {
        const double g = std::exp(2 * std::pow(k.f, 3) * (a * a * a - c * c * c) / 3 + k.f * a * b - k.f * c * d);
        const double ext = g * extended_airy(-k.f * a, b + k.f * k.f * a * a, -k.f * c, d + k.f * k.f * c * c);
        CHECK(std::abs(limit_rhs(a, b, c, d, k, {}, sub, 0).value - ext) < 1e-8);
    }
}

TEST_CASE("Gaussian R limit") {
    const auto k = scaling_constants(0.5, 0.25);
    for (double d : {0.5, 1.0, 2.0}) {
        const double q = r_limit_quadrature(d, 0.3, 0, -0.2, k.f), c = r_limit_closed(d, 0.3, 0, -0.2, k.f);
        CHECK(std::abs(q - c) < 1e-6);
        CHECK(c == doctest::Approx(-std::exp(-0.25 / (4 * k.f * d)) / std::sqrt(4 * pi * k.f * d)).epsilon(1e-14));
    }
}

TEST_CASE("descent lemmas at (0.5, 0.25)") {
    DescentGrids g;
    g.q_kappa = {{0.5, 0.25}};
    const auto rep = verify_descent(g);
    CHECK(rep.all_pass());
    std::size_t crit = 0;
    for (const auto& e : rep.entries)
        if (e.check == "CritDecayS1") ++crit;
    CHECK(crit > 0);
    // Circle monotonicity at R = z_c, with a finite-difference cross-check of the analytic derivative.
    const auto k = scaling_constants(0.5, 0.25);
    const SGFunctions sg(k);
    for (int i = 0; i < 50; ++i) {
        const double th = 0.01 + (pi - 0.02) * i / 49.0;
        const double an = circle_derivative_S(k, k.z_c, th);
        CHECK(an > 0.0);
        const double h = 1e-6;
        const double fd = (sg.re_Sbar(std::polar(k.z_c, th + h)) - sg.re_Sbar(std::polar(k.z_c, th - h))) / (2 * h);
        CHECK(std::abs(an - fd) < 1e-6 * std::max(1.0, std::abs(an)));
    }
}

TEST_CASE("converge_check: decreasing error on a short list") {
    ConvergeSetup setup;
    setup.N_list = {100, 1000};
    setup.threshold = 1.0;
    const auto t = converge_check({{0, 0, 0, 0}, {0.0, 0.2, 0.4, -0.1}}, setup);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.verdicts[0].decreasing);
    CHECK_FALSE(t.rows[0].r_part);
    CHECK_FALSE(t.rows[2].r_part);  // s <= t: no R part on either side
    CHECK(t.pass());
}
