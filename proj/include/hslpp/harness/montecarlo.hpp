#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "hslpp/lpp/paths.hpp"

namespace hslpp::harness {

// body(i) for i in [0, n) on `workers` threads. Results are stored by index, so the output
// never depends on the worker count; the first exception is rethrown after joining.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int workers, F body) {
    std::vector<T> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = body(i);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
                next = n;
            }
        }
    };
    const int w = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    if (w == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < w; ++k) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return out;
}

// lambda_1(m, N) = G_1(m, N) at each m of m_list; replica r uses weight stream r.
std::vector<std::vector<long>> top_curve_samples(const lpp::ModelParams& params, const std::vector<int>& m_list,
                                                 int replicas, int workers);

// Full profiles lambda(0..N, N), replica r on stream r.
std::vector<lpp::LambdaProfile> profile_samples(const lpp::ModelParams& params, int replicas, int workers);

}  // namespace hslpp::harness
