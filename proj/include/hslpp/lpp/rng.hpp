#pragma once

#include <array>
#include <cstdint>

namespace hslpp::lpp {

// Philox4x32-10 counter-based generator: every (counter, key) pair maps to an
// independent block, so draws do not depend on iteration order or thread count.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// splitmix64 finalizer, used to derive per-replica keys.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    // Uniform in (0,1] keyed by the cell (i,j) and an optional lane.
    double uniform(std::uint64_t i, std::uint64_t j, std::uint32_t lane = 0) const;

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
};

// Inverse CDF of P(X = k) = alpha^k (1 - alpha), k >= 0, from u in (0,1].
// log_alpha = log(alpha); pass -inf for alpha = 0.
int geometric_from_uniform(double log_alpha, double u);

}  // namespace hslpp::lpp
