#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hslpp/core/scaling.hpp"
#include "hslpp/lpp/rng.hpp"

namespace hslpp::lpp {

struct Spike {
    int row = 1;            // 1-based row index l_j
    double strength = 0.0;  // alpha~_j
};

struct ModelParams {
    double q = 0.5;
    double c = 0.5;
    int N = 100;
    std::vector<Spike> spikes;
    bool critical_mode = false;
    double varpi = 0.0;
    double kappa = 0.5;
    std::uint64_t seed = 0;
};

struct DerivedParameters {
    std::vector<double> a;       // a_1..a_N stored 0-based
    double c_effective = 0.0;
    bool zero_boundary = false;  // c_effective == 0: diagonal identically zero
    std::optional<ScalingConstants> constants;  // present when spikes or critical mode need them
};

// Spike strengths, +inf when there are none.
double min_spike_strength(const std::vector<Spike>& spikes);

DerivedParameters derive_parameters(const ModelParams& params);

class WeightMatrix {
public:
    WeightMatrix() = default;
    explicit WeightMatrix(int n) : n_(n), w_(static_cast<std::size_t>(n) * n, 0) {}
    // Rows of a square symmetric array; throws if asymmetric or negative.
    static WeightMatrix from_rows(const std::vector<std::vector<int>>& rows);

    int n() const { return n_; }
    // 0-based access.
    int operator()(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }
    // Writes (i,j) and (j,i).
    void set(int i, int j, int v);
    bool symmetric() const;

private:
    int n_ = 0;
    std::vector<int> w_;
};

// Deterministic symmetric weight field: the value at {i,j} depends only on the key and the cell.
class WeightSampler {
public:
    WeightSampler(const DerivedParameters& derived, std::uint64_t key);
    int operator()(int i, int j) const;  // 0-based
    int n() const { return static_cast<int>(log_a_.size()); }

private:
    std::vector<double> log_a_;
    double log_c_;
    CounterRng rng_;
};

// Replica `stream` of the weight array; key derived from (params.seed, stream).
WeightMatrix sample_weights(const ModelParams& params, std::uint64_t stream = 0);
WeightMatrix sample_weights(const DerivedParameters& derived, std::uint64_t seed, std::uint64_t stream);

}  // namespace hslpp::lpp
