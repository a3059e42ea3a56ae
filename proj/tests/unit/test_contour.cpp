#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hslpp/contour/contour.hpp"
#include "hslpp/contour/prelimit_contours.hpp"
#include "hslpp/contour/quadrature.hpp"
#include "hslpp/core/errors.hpp"
#include "hslpp/core/scaling.hpp"

using namespace hslpp;
using namespace hslpp::contour;
using std::numbers::pi;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("circle integrals") {
    const auto c1 = circle(1.0);
    CHECK(std::abs(integrate([](cplx z) { return 1.0 / z; }, c1).value - 2.0 * pi * I) < 1e-12);
    CHECK(std::abs(integrate([](cplx z) { return z; }, circle(2.0)).value) < 1e-12);
    CHECK(std::abs(integrate([](cplx z) { return 1.0 / (z - 3.0); }, c1).value) < 1e-12);
    CHECK_THROWS_AS(circle(0.0), ParameterError);
}

TEST_CASE("segment integral and continuity invariant") {
    const Contour seg({Segment(Line{0.0, 1.0})}, false);
    CHECK(std::abs(integrate([](cplx z) { return std::exp(z); }, seg).value - (std::exp(1.0) - 1.0)) < 1e-12);
    CHECK_THROWS_AS(Contour({Segment(Line{0.0, 1.0}), Segment(Line{1.5, 2.0})}, false), ParameterError);
    CHECK_THROWS_AS(Contour({Segment(Line{0.0, 1.0})}, true), ParameterError);
}

TEST_CASE("keyhole winding numbers") {
    CHECK(std::round(winding_number(keyhole(1.2, pi / 3, 3.0, -0.5), 1.2)) == 0);
    CHECK(std::round(winding_number(keyhole(1.2, pi / 3, 3.0, 0.5), 1.2)) == 1);
    CHECK(std::round(winding_number(keyhole(1.2, pi / 3, 3.0, -0.5), 0.0)) == 1);
    CHECK(std::round(winding_number(keyhole(1.2, pi / 3, 3.0, 0.5), 0.0)) == 1);
    CHECK(std::round(winding_number(keyhole(1.2, pi / 3, 3.0, 0.0), 5.0)) == 0);
    CHECK_THROWS_AS(keyhole(1.2, 0.0, 3.0, 0.1), ParameterError);
    CHECK_THROWS_AS(keyhole(1.2, pi / 3, 1.0, 0.5), ParameterError);
}

TEST_CASE("Cauchy deformation across admissible keyholes") {
    auto f = [](cplx z) { return std::exp(z) / (z - 0.2) + 1.0 / (z - 5.0) + std::sin(z) / ((z - 1.25) * (z - 1.25) + 4.0); };
    QuadratureSpec spec{64, 4096, 1e-13, 0.0};
    const auto a = integrate(f, keyhole(1.25, 5 * pi / 12, 3.0, -0.1), spec).value;
    const auto b = integrate(f, keyhole(1.25, 5 * pi / 12, 3.0, -0.4), spec).value;
    const auto c = integrate(f, keyhole(1.25, 0.3 * pi, 3.5, 0.2), spec).value;
    CHECK(std::abs(a - b) < 1e-9);
    CHECK(std::abs(a - c) < 1e-9);
    // Residues at 0.2 and at 1.25 +- 2i are inside; 5 is outside.
    const cplx res = std::exp(cplx(0.2)) + std::sin(cplx(1.25, 2.0)) / (4.0 * I) + std::sin(cplx(1.25, -2.0)) / (-4.0 * I);
    CHECK(std::abs(a - 2.0 * pi * I * res) < 1e-9);
}

TEST_CASE("analytic integrands vanish on closed contours") {
    for (const auto& c : {circle(0.7), keyhole(1.0, 1.2, 2.5, -0.3), keyhole(0.5, 0.9, 4.0, 0.2)})
        CHECK(std::abs(integrate([](cplx z) { return std::exp(z) * z * z + std::cos(z); }, c).value) < 1e-11);
}

TEST_CASE("ray: Airy integral stabilises, passes through a, orientation flips with r") {
    auto f = [](cplx z) { return std::exp(z * z * z / 3.0); };
    const auto v8 = integrate(f, ray(0.0, pi / 3, 0.0, 8.0)).value;
    const auto v10 = integrate(f, ray(0.0, pi / 3, 0.0, 10.0)).value;
    CHECK(std::abs(v10 - v8) < 1e-10 * std::abs(v10));
    CHECK(std::abs(v10 - 2.0 * pi * I * 0.355028053887817239) < 1e-10);  // 2 pi i Ai(0)

    const auto through = ray(0.7, pi / 3, 0.0, 2.0);
    double dmin = 1.0;
    for (const auto& s : through.segments()) dmin = std::min(dmin, s.distance(0.7));
    CHECK(dmin < 1e-14);

    auto g = [](cplx z) { return 1.0 / (z - 0.7) * std::exp((z - 0.7) * (z - 0.7) * (z - 0.7)); };
    const auto plus = integrate(g, ray(0.7, pi / 3, 0.5, 6.0)).value;
    const auto minus = integrate(g, ray(0.7, pi / 3, -0.5, 6.0)).value;
    CHECK(std::abs(std::abs(plus - minus) - 2.0 * pi) < 1e-9);
    CHECK_THROWS_AS(ray(0.0, pi / 3, 2.0, 1.0), ParameterError);
}

TEST_CASE("non-convergence carries the last two estimates") {
    QuadratureSpec spec{8, 32, 1e-14, 0.0};
    try {
        integrate([](cplx z) { return 1.0 / (z - 1.0000001); }, circle(1.0), spec);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(std::abs(e.latest)));
        CHECK(e.previous != e.latest);
    }
}

TEST_CASE("doubling moves the value by less than the error estimate") {
    auto f = [](cplx z) { return std::exp(z) / (z - 1.1); };
    const auto c = keyhole(1.25, 5 * pi / 12, 3.0, -0.05);
    const auto r = integrate(f, c, {16, 4096, 1e-10, 0.0});
    const auto fine = integrate(f, c, {4 * r.nodes_per_panel, 1 << 14, 1e-14, 0.0});
    CHECK(std::abs(fine.value - r.value) <= std::max(r.error, 1e-14));
}

TEST_CASE("pre-limit contours: subcritical standard offsets and nesting") {
    const auto k = scaling_constants(0.5, 0.25);
    const auto pc = prelimit_contours(k, 1000000, Regime::Subcritical, 0.5, {});
    CHECK(pc.rule == "standard");
    CHECK(pc.r1 == 0.0);
    CHECK(pc.r2 == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK(pc.radial_nested);
    CHECK(pc.gamma_max_modulus < pc.Gamma_min_modulus);
    CHECK(max_modulus(pc.gamma) < min_modulus(pc.Gamma));
    CHECK(std::round(winding_number(pc.Gamma, 0.5)) == 1);
    CHECK(std::round(winding_number(pc.gamma, 0.5)) == 1);
    CHECK(std::round(winding_number(pc.Gamma, 2.0)) == 0);
    CHECK(crosses_negative_axis(pc.Gamma));
    CHECK_FALSE(crosses_negative_axis(pc.Gamma_local));
    CHECK_FALSE(crosses_negative_axis(pc.gamma_local));
    CHECK_FALSE(crosses_negative_axis(pc.gamma_tilde_local));
    // gamma~ crosses the real axis at z_c at angle pi/2 with radius sqrt(z_c^2 + N^(-1/6)).
    CHECK(max_modulus(pc.gamma_tilde) == doctest::Approx(std::sqrt(k.z_c * k.z_c + 0.1)).epsilon(1e-6));
}

TEST_CASE("pre-limit contours: critical without spikes uses a flagged rule") {
    const auto k = scaling_constants(0.5, 0.25);
    for (double varpi : {-0.5, 0.0, 0.5}) {
        const auto pc = prelimit_contours(k, 10000, Regime::Critical, 0.0, {}, varpi);
        CHECK(pc.rule != "standard");
        CHECK(pc.c == doctest::Approx(k.z_c - varpi / (k.sigma * std::cbrt(10000.0))).epsilon(1e-14));
        CHECK(std::round(winding_number(pc.gamma, pc.c)) == 1);
        CHECK(std::round(winding_number(pc.Gamma, 1.0 / k.q)) == 0);
    }
    CHECK_THROWS_AS(prelimit_contours(k, 1000, Regime::Critical, 0.0, {0.2}, -0.5), ParameterError);
}

TEST_CASE("pre-limit contours: N too small is reported") {
    const auto k = scaling_constants(0.5, 0.25);
    try {
        prelimit_contours(k, 1, Regime::Subcritical, 1.2, {});
        FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("N too small") != std::string::npos);
        CHECK(std::string(e.what()).find("1/q") != std::string::npos);
    }
}
