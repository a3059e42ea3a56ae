#include "hslpp/harness/montecarlo.hpp"

#include <algorithm>

#include "hslpp/core/errors.hpp"
#include "hslpp/lpp/rng.hpp"

namespace hslpp::harness {

std::vector<std::vector<long>> top_curve_samples(const lpp::ModelParams& params, const std::vector<int>& m_list,
                                                 int replicas, int workers) {
    const auto derived = lpp::derive_parameters(params);
    if (m_list.empty()) return std::vector<std::vector<long>>(replicas);
    for (int m : m_list)
        if (m < 1 || m > params.N) throw RangeError("row index m outside [1, N]");
    const int m_max = *std::max_element(m_list.begin(), m_list.end());
    return parallel_map<std::vector<long>>(static_cast<std::size_t>(replicas), workers, [&](std::size_t r) {
        const lpp::WeightSampler w(derived, lpp::derive_seed(params.seed, r));
        const auto col = lpp::g1_column(w, m_max, params.N);
        std::vector<long> out;
        out.reserve(m_list.size());
        for (int m : m_list) out.push_back(col[m - 1]);
        return out;
    });
}

std::vector<lpp::LambdaProfile> profile_samples(const lpp::ModelParams& params, int replicas, int workers) {
    const auto derived = lpp::derive_parameters(params);
    return parallel_map<lpp::LambdaProfile>(static_cast<std::size_t>(replicas), workers, [&](std::size_t r) {
        return lpp::lambda_profile(lpp::sample_weights(derived, params.seed, r), params.N);
    });
}

}  // namespace hslpp::harness
