#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "doctest.h"
#include "hslpp/core/errors.hpp"
#include "hslpp/lpp/ensemble.hpp"
#include "hslpp/lpp/model.hpp"
#include "hslpp/lpp/paths.hpp"
#include "hslpp/lpp/rng.hpp"

using namespace hslpp;
using namespace hslpp::lpp;

namespace {

WeightMatrix random_symmetric(std::mt19937& gen, int n, int max_entry) {
    std::uniform_int_distribution<int> d(0, max_entry);
    WeightMatrix w(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) w.set(i, j, d(gen));
    return w;
}

// All up-right paths from (0,0) to (m-1,n-1), enumerated recursively.
long brute_g1(const WeightMatrix& w, int m, int n) {
    long best = std::numeric_limits<long>::min();
    std::function<void(int, int, long)> go = [&](int i, int j, long acc) {
        acc += w(i, j);
        if (i == m - 1 && j == n - 1) {
            best = std::max(best, acc);
            return;
        }
        if (i + 1 < m) go(i + 1, j, acc);
        if (j + 1 < n) go(i, j + 1, acc);
    };
    go(0, 0, 0);
    return best;
}

}  // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("derive_parameters examples") {
    ModelParams p;
    p.q = 0.5;
    p.kappa = 1.0;
    p.c = 0.8;
    p.N = 500;
    auto d = derive_parameters(p);
    for (double a : d.a) CHECK(a == 0.5);
    CHECK(d.c_effective == 0.8);

    p.critical_mode = true;
    p.varpi = 0.0;
    d = derive_parameters(p);
    CHECK(d.c_effective == doctest::Approx(1.0).epsilon(1e-14));

    // q = 0.5, kappa = 0.25, varpi = 1, N = 1000: sigma from S'''(z_c) = 2 sigma^3 evaluated by hand.
    p.kappa = 0.25;
    p.varpi = 1.0;
    p.N = 1000;
    d = derive_parameters(p);
    const double q = 0.5, k = 0.25, z = 1.25, h = q * (q + 2 * std::sqrt(k) + q * k) / (1 - q * q);
    const double S3 = 2 / std::pow(z - q, 3) - 2 / std::pow(z, 3) + 2 * k * q * q * q / std::pow(1 - q * z, 3) -
                      2 * h / std::pow(z, 3);
    const double sigma = std::cbrt(S3 / 2);
    CHECK(d.c_effective == doctest::Approx(1.25 - 0.1 / sigma).epsilon(1e-12));

    ModelParams bad;
    bad.q = 0.5;
    bad.c = 2.5;
    bad.N = 3;
    CHECK_THROWS_AS(derive_parameters(bad), ParameterError);
    bad.c = 0.5;
    bad.kappa = 0.25;
    bad.spikes = {{2, 0.0}, {1, 0.0}};
    CHECK_THROWS_AS(derive_parameters(bad), ParameterError);
    bad.spikes = {{2, 1.5}};
    bad.critical_mode = true;
    bad.varpi = -2.0;  // -varpi = 2 >= min strength 1.5
    CHECK_THROWS_AS(derive_parameters(bad), ParameterError);
}

TEST_CASE("spike parameters") {
    ModelParams p;
    p.q = 0.5;
    p.kappa = 0.25;
    p.N = 1000;
    p.spikes = {{3, 0.7}};
    const auto d = derive_parameters(p);
    const auto& k = *d.constants;
    CHECK(d.a[2] == doctest::Approx(1.0 / (k.z_c + 0.7 / (k.sigma * 10.0))).epsilon(1e-14));
    CHECK(d.a[0] == 0.5);
}

TEST_CASE("geometric sampling: zero parameter, mean, symmetry") {
    CHECK(geometric_from_uniform(-std::numeric_limits<double>::infinity(), 0.3) == 0);
    ModelParams p;
    p.q = 0.5;
    p.c = 0.0;
    p.N = 6;
    const auto w = sample_weights(p, 0);
    for (int i = 0; i < 6; ++i) CHECK(w(i, i) == 0);
    CHECK(w.symmetric());

    const double alpha = 0.3, n = 1e6;
    CounterRng rng(12345);
    double s = 0;
    for (int i = 0; i < 1000000; ++i) s += geometric_from_uniform(std::log(alpha), rng.uniform(i, 0));
    const double mean = alpha / (1 - alpha), se = std::sqrt(alpha / ((1 - alpha) * (1 - alpha)) / n);
    CHECK(std::abs(s / n - mean) < 4 * se);
}

TEST_CASE("sampling is deterministic per (seed, stream)") {
    ModelParams p;
    p.q = 0.4;
    p.c = 0.3;
    p.N = 8;
    p.seed = 99;
    const auto a = sample_weights(p, 3), b = sample_weights(p, 3), c = sample_weights(p, 4);
    bool same = true, differ = false;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            same = same && a(i, j) == b(i, j);
            differ = differ || a(i, j) != c(i, j);
        }
    CHECK(same);
    CHECK(differ);
    // The on-the-fly sampler draws the same field.
    const WeightSampler ws(derive_parameters(p), derive_seed(99, 3));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(ws(i, j) == a(i, j));
}

TEST_CASE("g1 examples and brute force") {
    CHECK(g1(WeightMatrix::from_rows({{5}}), 1, 1) == 5);
    const auto w = WeightMatrix::from_rows({{1, 2}, {2, 0}});
    CHECK(g1(w, 2, 2) == 3);
    CHECK_THROWS_AS(g1(w, 3, 1), RangeError);
    std::mt19937 gen(7);
    for (int rep = 0; rep < 50; ++rep) {
        const auto r = random_symmetric(gen, 4, 5);
        for (int m = 1; m <= 4; ++m)
            for (int n = 1; n <= 4; ++n) CHECK(g1(r, m, n) == brute_g1(r, m, n));
    }
}

TEST_CASE("gk_bruteforce examples") {
    const auto w = WeightMatrix::from_rows({{1, 2}, {2, 0}});
    CHECK(gk_bruteforce(w, 2, 2, 2) == 5);
    CHECK(gk_bruteforce(w, 2, 2, 1) == g1(w, 2, 2));
    CHECK(gk_bruteforce(w, 2, 2, 3) == 5);  // k = min(m,n)+1: full sum
    const auto z = WeightMatrix::from_rows({{1, 2, 3}, {2, 4, 5}, {3, 5, 6}});
    CHECK(gk_bruteforce(z, 2, 3, 3) == 1 + 2 + 3 + 2 + 4 + 5);
    WeightMatrix big(6);
    CHECK_THROWS_AS(gk_bruteforce(big, 6, 6, 1), GuardError);
}

TEST_CASE("greene_shape examples and prefix sums") {
    const auto w = WeightMatrix::from_rows({{1, 2}, {2, 0}});
    CHECK(greene_shape(w, 2, 2) == Partition{3, 2});
    CHECK(greene_shape(WeightMatrix(3), 3, 3).empty());
    std::mt19937 gen(11);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 1 + rep % 5;
        const auto r = random_symmetric(gen, n, 4);
        const int m = 1 + rep % n;
        const auto lam = greene_shape(r, m, n);
        long prefix = 0;
        for (int k = 1; k <= std::min(m, n); ++k) {
            prefix += lam[k - 1];
            CHECK(prefix == gk_bruteforce(r, m, n, k));
        }
    }
}

TEST_CASE("lambda_profile: examples, interlacing, agreement with g1 and greene") {
    const auto w = WeightMatrix::from_rows({{1, 2}, {2, 0}});
    const auto prof = lambda_profile(w, 2);
    REQUIRE(prof.lambdas.size() == 3);
    CHECK(prof.lambdas[0].empty());
    CHECK(prof.lambdas[1] == Partition{3});
    CHECK(prof.lambdas[2] == Partition{3, 2});
    for (const auto& l : lambda_profile(WeightMatrix(4), 4).lambdas) CHECK(l.empty());

    ModelParams p;
    p.q = 0.6;
    p.c = 0.7;
    p.N = 12;
    for (int rep = 0; rep < 10; ++rep) {
        const auto r = sample_weights(p, rep);
        const auto pr = lambda_profile(r, 12);
        CHECK(profile_interlaces(pr));
        for (int m = 1; m <= 12; ++m) {
            CHECK(pr.lambdas[m][0] == g1(r, m, 12));
            CHECK(pr.lambdas[m] == greene_shape(r, m, 12));
        }
    }
}

TEST_CASE("monotone coupling: raising an entry never lowers G_k") {
    std::mt19937 gen(5);
    for (int rep = 0; rep < 60; ++rep) {
        auto r = random_symmetric(gen, 4, 3);
        const auto before = greene_shape(r, 4, 4);
        const int i = rep % 4, j = (rep / 4) % 4;
        r.set(i, j, r(i, j) + 1 + rep % 3);
        const auto after = greene_shape(r, 4, 4);
        long a = 0, b = 0;
        for (int k = 0; k < 4; ++k) {
            a += before[k];
            b += after[k];
            CHECK(b >= a);
        }
    }
}

TEST_CASE("time shift uses floor for negative t") {
    CHECK(time_shift(-0.5, 1000) == -50);
    CHECK(time_shift(-0.0001, 1000) == -1);
    CHECK(time_shift(0.3, 1000) == 30);
}

TEST_CASE("rescale: deterministic profile, ordering, admissibility") {
    const int N = 1000;
    const auto k = scaling_constants(0.5, 0.25);
    const long base = static_cast<long>(std::floor(k.kappa * N)), C = static_cast<long>(std::floor(k.h * N));
    LambdaProfile prof;
    prof.N = N;
    prof.lambdas.resize(N + 1);
    for (int m = 1; m <= N; ++m) {
        const long top = C + static_cast<long>(std::floor(k.p * (m - base)));
        prof.lambdas[m] = Partition{static_cast<int>(top), static_cast<int>(top / 2)};
    }
    const std::vector<double> grid{-0.5, -0.2, 0.0, 0.35, 1.0};
    const auto e = rescale(prof, k, grid, 2);
    const double pref = 1.0 / (std::sqrt(k.p * (1 + k.p)) * std::cbrt(N));
    for (std::size_t t = 0; t < grid.size(); ++t) {
        CHECK(e.values[0][t] <= 1e-12);
        CHECK(e.values[0][t] >= -pref - 1e-12);
        CHECK(e.values[0][t] >= e.values[1][t]);
    }
    CHECK_THROWS_AS(rescale(prof, k, {-3.0}, 1), RangeError);
    CHECK_THROWS_AS(rescale(prof, k, {8.0}, 1), RangeError);
}

TEST_CASE("rescaled curves are ordered on sampled profiles") {
    ModelParams p;
    p.q = 0.5;
    p.c = 0.5;
    p.N = 60;
    const auto k = scaling_constants(0.5, 0.5);
    for (int rep = 0; rep < 5; ++rep) {
        const auto e = rescale(lambda_profile(sample_weights(p, rep), 60), k, {-0.5, 0.0, 0.5}, 3);
        for (std::size_t t = 0; t < 3; ++t) {
            CHECK(e.values[0][t] >= e.values[1][t]);
            CHECK(e.values[1][t] >= e.values[2][t]);
        }
    }
}
