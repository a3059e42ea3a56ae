#include "hslpp/lpp/rng.hpp"

#include <cmath>
#include <limits>

namespace hslpp::lpp {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed) ^ (stream * 0xD1342543DE82EF95ull + 1));
}

double CounterRng::uniform(std::uint64_t i, std::uint64_t j, std::uint32_t lane) const {
    const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32) ^ lane,
                                              static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j >> 32)};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)};
    const auto b = philox4x32(ctr, key);
    const std::uint64_t bits = ((static_cast<std::uint64_t>(b[0]) << 32) | b[1]) >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

int geometric_from_uniform(double log_alpha, double u) {
    if (log_alpha == -std::numeric_limits<double>::infinity()) return 0;
    // P(X >= k) = alpha^k, so X = floor(log u / log alpha).
    return static_cast<int>(std::floor(std::log(u) / log_alpha));
}

}  // namespace hslpp::lpp
