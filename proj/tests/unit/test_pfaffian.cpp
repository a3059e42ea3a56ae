#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hslpp/core/errors.hpp"
#include "hslpp/pfaffian/pfaffian.hpp"
#include "hslpp/pfaffian/point_process.hpp"
#include "hslpp/pfaffian/stats.hpp"
#include "hslpp/pfaffian/tracy_widom.hpp"

using hslpp::ParameterError;
using namespace hslpp::pfaffian;
using hslpp::pfaffian::pfaffian;

namespace {

RealMatrix random_skew(int n, std::mt19937& gen) {
    std::normal_distribution<double> g;
    RealMatrix A = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            A(i, j) = g(gen);
            A(j, i) = -A(i, j);
        }
    return A;
}

hslpp::kernel::KgeoContext n1() {
    hslpp::kernel::KgeoContext c;
    c.N = 1;
    c.q = 0.5;
    c.c = 0.5;
    c.M = {1};
    return c;
}

}  // namespace

TEST_CASE("pfaffian closed forms") {
    RealMatrix A(2, 2);
    A << 0, 3.5, -3.5, 0;
    CHECK(pfaffian(A) == doctest::Approx(3.5));
    std::mt19937 gen(7);
    const RealMatrix B = random_skew(4, gen);
    const double expect = B(0, 1) * B(2, 3) - B(0, 2) * B(1, 3) + B(0, 3) * B(1, 2);
    CHECK(std::abs(pfaffian(B) - expect) < 1e-13);
    CHECK(pfaffian(RealMatrix(0, 0)) == 1.0);
    // Pf(J) for the standard block form is 1 and row swaps flip the sign.
    RealMatrix J = RealMatrix::Zero(4, 4);
    J(0, 1) = J(2, 3) = 1;
    J(1, 0) = J(3, 2) = -1;
    CHECK(pfaffian(J) == doctest::Approx(1.0));
    RealMatrix P = RealMatrix::Identity(4, 4);
    P.row(1).swap(P.row(2));
    CHECK(pfaffian(RealMatrix(P * B * P.transpose())) == doctest::Approx(-pfaffian(B)));
}

TEST_CASE("pfaffian squared equals determinant") {
    std::mt19937 gen(11);
    for (int rep = 0; rep < 5; ++rep) {
        const RealMatrix A = random_skew(12, gen);
        const double pf = pfaffian(A), det = A.determinant();
        CHECK(std::abs(pf * pf - det) < 1e-9 * std::max(1.0, std::abs(det)));
    }
    const RealMatrix re = random_skew(12, gen), im = random_skew(12, gen);
    const ComplexMatrix C = re.cast<std::complex<double>>() + std::complex<double>(0, 1) * im.cast<std::complex<double>>();
    const auto pf = pfaffian(C);
    const auto det = C.determinant();
    CHECK(std::abs(pf * pf - det) < 1e-9 * std::max(1.0, std::abs(det)));
}

TEST_CASE("pfaffian input errors") {
    CHECK_THROWS_AS(pfaffian(RealMatrix(RealMatrix::Zero(3, 3))), ParameterError);
    CHECK_THROWS_AS(pfaffian(RealMatrix(RealMatrix::Zero(2, 4))), ParameterError);
    RealMatrix A(2, 2);
    A << 0, 1, 1, 0;
    CHECK_THROWS_AS(pfaffian(A), ParameterError);
}

TEST_CASE("correlations for N = 1") {
    // lambda_1 is geometric with P(k) = (1 - q c)(q c)^k, the other points are frozen at -2, -3, ...
    const KgeoPfaffianKernel K(n1());
    CHECK(correlation({{1, -1}}, K) == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(correlation({{1, 2}}, K) == doctest::Approx(0.75 * std::pow(0.25, 3)).epsilon(1e-10));
    CHECK(std::abs(correlation({{1, -1}, {1, 0}}, K)) < 1e-10);
    CHECK(correlation({{1, -2}, {1, 1}}, K) == doctest::Approx(0.75 * 0.25 * 0.25).epsilon(1e-9));
    CHECK(correlation({{1, -3}, {1, -2}}, K) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(correlation({{1, 0}, {1, 0}}, K)) < 1e-10);
}

TEST_CASE("correlations at N = 10 lie in [0, 1]") {
    hslpp::kernel::KgeoContext ctx;
    ctx.N = 10;
    ctx.q = 0.5;
    ctx.c = 0.6;
    ctx.M = {10};
    const KgeoPfaffianKernel K(ctx);
    double total = 0;
    for (long x = -12; x <= 20; ++x) {
        const double r = correlation({{1, x}}, K);
        CHECK(r > -1e-9);
        CHECK(r < 1 + 1e-9);
    }
    for (long x = 0; x <= 6; ++x) {
        const double r2 = correlation({{1, x}, {1, x + 1}}, K);
        CHECK(r2 > -1e-9);
        CHECK(r2 <= correlation({{1, x}}, K) + 1e-9);
        total += r2;
    }
    CHECK(total > 0);
}

TEST_CASE("gap probability for N = 1 and monotonicity") {
    const KgeoPfaffianKernel K(n1());
    for (long s : {0L, 1L, 3L}) {
        const auto g = gap_probability(s, 1, K);
        CHECK(std::abs(g.probability - (1 - std::pow(0.25, s + 1))) < 1e-8);
        CHECK(g.tail_bound < 1e-8);
    }
    hslpp::kernel::KgeoContext ctx;
    ctx.N = 6;
    ctx.q = 0.5;
    ctx.c = 0.5;
    ctx.M = {6};
    const KgeoPfaffianKernel K6(ctx);
    double prev = 0;
    for (long s = 0; s <= 6; ++s) {
        const double p = gap_probability(s, 1, K6).probability;
        CHECK(p >= prev - 1e-9);
        CHECK(p <= 1 + 1e-9);
        prev = p;
    }
}

TEST_CASE("Tracy-Widom GUE values") {
    const TracyWidomGUE tw;
    CHECK(tw.cdf(-2.0) == doctest::Approx(0.413224).epsilon(1e-5));
    CHECK(tw.cdf(0.0) == doctest::Approx(0.969373).epsilon(1e-5));
    CHECK(tw.cdf(6.0) > 1 - 1e-8);
    CHECK(tw.cdf(-8.0) < 1e-8);
    double prev = 0;
    for (double s = -6; s <= 4; s += 0.5) {
        const double F = tw.cdf(s);
        CHECK(F >= prev);
        prev = F;
    }
    const auto m = tw.moments();
    CHECK(m.mean == doctest::Approx(-1.7710868074).epsilon(1e-8));
    CHECK(m.variance == doctest::Approx(0.8131947928).epsilon(1e-8));
}

TEST_CASE("empirical distribution and KS distance") {
    const EmpiricalDistribution one({0.0});
    CHECK(ks_distance(one, [](double s) { return s < 0 ? 0.0 : s > 1 ? 1.0 : s; }) == doctest::Approx(1.0));
    auto unif = [](double s) { return std::clamp(s, 0.0, 1.0); };
    CHECK(ks_distance(EmpiricalDistribution({0.5}), unif) == doctest::Approx(0.5));
    // Ties form a single jump of height 2/6 at 0.5; the sup sits just below 0.9.
    const EmpiricalDistribution t({0.5, 0.5, 0.9, 0.95, 0.97, 0.99});
    CHECK(ks_distance(t, unif) == doctest::Approx(0.9 - 2.0 / 6));
    const EmpiricalDistribution d({1, 1, 2, 3, 3, 3});
    CHECK(d.cdf(1) == doctest::Approx(2.0 / 6));
    CHECK(d.mean() == doctest::Approx(13.0 / 6));
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u;
    std::vector<double> xs(4000);
    for (auto& v : xs) v = u(gen);
    CHECK(ks_distance(EmpiricalDistribution(xs), unif) < ks_band_99(xs.size()));
    CHECK_THROWS_AS(EmpiricalDistribution({}), ParameterError);
}

TEST_CASE("binomial comparison") {
    const auto b = binomial_compare(0.0, 0.5, 0.52, 10000);
    CHECK(b.std_error == doctest::Approx(0.005));
    CHECK(b.z == doctest::Approx(4.0));
    CHECK(binomial_compare(0.0, 1.0, 1.0, 100).z == 0.0);
    CHECK(std::isinf(binomial_compare(0.0, 1.0, 0.99, 100).z));
}
