#include "hslpp/lpp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hslpp/core/errors.hpp"

namespace hslpp::lpp {

double min_spike_strength(const std::vector<Spike>& spikes) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : spikes) m = std::min(m, s.strength);
    return m;
}

DerivedParameters derive_parameters(const ModelParams& p) {
    if (!(p.q > 0.0 && p.q < 1.0)) throw ParameterError("q must lie in (0,1)");
    if (p.N < 1) throw ParameterError("N must be >= 1");
    if (!(p.c >= 0.0) && !p.critical_mode) throw ParameterError("c must be >= 0");
    for (std::size_t j = 0; j < p.spikes.size(); ++j) {
        const int l = p.spikes[j].row;
        if (l < 1 || l > p.N) throw ParameterError("spike row " + std::to_string(l) + " outside [1,N]");
        if (j > 0 && l <= p.spikes[j - 1].row) throw ParameterError("spike rows must be strictly increasing");
    }

    DerivedParameters d;
    d.a.assign(p.N, p.q);
    d.c_effective = p.c;
    const double n13 = std::cbrt(static_cast<double>(p.N));
    if (!p.spikes.empty() || p.critical_mode) d.constants = scaling_constants(p.q, p.kappa);

    for (const auto& s : p.spikes) {
        const double denom = d.constants->z_c + s.strength / (d.constants->sigma * n13);
        if (!(denom > 0.0)) throw ParameterError("spike at row " + std::to_string(s.row) + " gives a nonpositive parameter");
        const double a = 1.0 / denom;
        if (!(a < 1.0 / p.q)) throw ParameterError("spike at row " + std::to_string(s.row) + " gives a >= 1/q; increase N");
        d.a[s.row - 1] = a;
    }
    if (p.critical_mode) {
        const double abar = min_spike_strength(p.spikes);
        if (!(-p.varpi < abar)) throw ParameterError("critical mode requires -varpi < min spike strength");
        d.c_effective = d.constants->z_c - p.varpi / (d.constants->sigma * n13);
        if (!(d.c_effective >= 0.0)) throw ParameterError("critical boundary parameter is negative; increase N");
    }
    d.zero_boundary = d.c_effective == 0.0;

    // a_i a_j < 1 for i != j reduces to the two largest entries.
    int i1 = 0, i2 = -1;
    for (int i = 1; i < p.N; ++i) {
        if (d.a[i] > d.a[i1]) {
            i2 = i1;
            i1 = i;
        } else if (i2 < 0 || d.a[i] > d.a[i2]) {
            i2 = i;
        }
    }
    if (i2 >= 0 && !(d.a[i1] * d.a[i2] < 1.0))
        throw ParameterError("a_" + std::to_string(i1 + 1) + " * a_" + std::to_string(i2 + 1) + " >= 1");
    if (!(d.c_effective * d.a[i1] < 1.0))
        throw ParameterError("c * a_" + std::to_string(i1 + 1) + " >= 1");
    return d;
}

WeightMatrix WeightMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    const int n = static_cast<int>(rows.size());
    WeightMatrix w(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw ParameterError("weight matrix must be square");
        for (int j = 0; j < n; ++j) {
            if (rows[i][j] < 0) throw ParameterError("weights must be nonnegative");
            if (rows[i][j] != rows[j][i]) throw ParameterError("weight matrix must be symmetric");
            w.w_[static_cast<std::size_t>(i) * n + j] = rows[i][j];
        }
    }
    return w;
}

void WeightMatrix::set(int i, int j, int v) {
    w_[static_cast<std::size_t>(i) * n_ + j] = v;
    w_[static_cast<std::size_t>(j) * n_ + i] = v;
}

bool WeightMatrix::symmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < i; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

WeightSampler::WeightSampler(const DerivedParameters& d, std::uint64_t key)
    : log_c_(d.c_effective > 0.0 ? std::log(d.c_effective) : -std::numeric_limits<double>::infinity()), rng_(key) {
    log_a_.reserve(d.a.size());
    for (double a : d.a) log_a_.push_back(std::log(a));
}

int WeightSampler::operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    const double la = i == j ? log_c_ + log_a_[i] : log_a_[i] + log_a_[j];
    return geometric_from_uniform(la, rng_.uniform(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
}

WeightMatrix sample_weights(const DerivedParameters& d, std::uint64_t seed, std::uint64_t stream) {
    const WeightSampler draw(d, derive_seed(seed, stream));
    const int n = draw.n();
    WeightMatrix w(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) w.set(i, j, draw(i, j));
    return w;
}

WeightMatrix sample_weights(const ModelParams& params, std::uint64_t stream) {
    return sample_weights(derive_parameters(params), params.seed, stream);
}

}  // namespace hslpp::lpp
