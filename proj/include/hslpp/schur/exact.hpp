#pragma once

#include <map>
#include <span>
#include <vector>

#include "hslpp/lpp/partition.hpp"

namespace hslpp::schur {

using hslpp::interlaces;

// Sum over interlacing chains mu = l0 <= l1 <= ... <= ln = lambda of prod x_i^{|l_i| - |l_{i-1}|}.
double skew_schur(const Partition& lambda, const Partition& mu, std::span<const double> vars);

// c^(lambda_1 - lambda_2 + lambda_3 - ...), with 0^0 = 1.
double tau(const Partition& lambda, double c);

struct SchurWeightContext {
    int N = 1;
    std::vector<double> a;  // a_1..a_N stored 0-based
    double c = 0.0;

    SchurWeightContext(std::vector<double> a_, double c_);
    // Z_N = prod_i (1 - c a_i)^-1 prod_{i<j} (1 - a_i a_j)^-1
    double normalization() const;
};

using Sequence = std::vector<Partition>;  // (lambda^1, ..., lambda^N)

// (1/Z_N) tau_{lambda^1}(c) s_{lambda^1/lambda^2}(a_N) ... s_{lambda^N}(a_1).
double process_weight(const Sequence& seq, const SchurWeightContext& ctx);

struct ExactLaw {
    std::map<Sequence, double> probabilities;
    double total = 0.0;         // enumerated mass
    double deficit = 0.0;       // 1 - total
    double tail_mass = 0.0;     // P(|lambda^1| > cap) from the law of the total weight
    int weight_cap = 0;
};

// Every sequence with |lambda^1| <= weight_cap. Guard: N <= 3, cap <= 40.
ExactLaw enumerate_law(const SchurWeightContext& ctx, int weight_cap);

// P(total weight of the symmetric array <= cap): diagonal Geom(c a_i), off-diagonal pairs 2 Geom(a_i a_j).
double total_weight_cdf(const SchurWeightContext& ctx, int cap);

}  // namespace hslpp::schur
