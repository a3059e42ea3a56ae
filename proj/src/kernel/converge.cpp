#include "hslpp/kernel/converge.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "hslpp/core/errors.hpp"

namespace hslpp::kernel {

bool ConvergeTable::pass() const {
    for (const auto& v : verdicts)
        if (!v.decreasing || !v.below_threshold) return false;
    return !verdicts.empty();
}

ConvergeTable converge_check(const std::vector<std::array<double, 4>>& points, const ConvergeSetup& setup) {
    if (setup.N_list.empty()) throw ParameterError("N list must not be empty");
    for (std::size_t i = 1; i < setup.N_list.size(); ++i)
        if (setup.N_list[i] <= setup.N_list[i - 1]) throw ParameterError("N list must be increasing");
    const auto k = scaling_constants(setup.q, setup.kappa);

    std::vector<double> limits(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        const auto& [s, x, t, y] = points[p];
        limits[p] = limit_rhs(s, x, t, y, k, setup.spikes, setup.regime, setup.varpi).value;
    }

    const std::size_t nN = setup.N_list.size();
    ConvergeTable table;
    table.rows.resize(points.size() * nN);
    std::vector<std::string> rules(nN);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    // One task per N: all points share the contour set of that N.
    auto work = [&]() {
        while (true) {
            const std::size_t j = next++;
            if (j >= nN) return;
            try {
                PrelimitConfig cfg;
                cfg.constants = k;
                cfg.N = setup.N_list[j];
                cfg.regime = setup.regime;
                cfg.c = setup.c;
                cfg.varpi = setup.varpi;
                cfg.spikes = setup.spikes;
                cfg.quad = setup.quad;
                cfg.tail_tol = setup.tail_tol;
                const PrelimitKernel K(cfg);
                rules[j] = K.contours().rule;
                for (std::size_t p = 0; p < points.size(); ++p) {
                    const auto& [s, x, t, y] = points[p];
                    const auto v = K.entry(Component::K12, s, x, t, y);
                    ConvergeRow row{points[p], cfg.N, v.value.real(), limits[p], 0, 0, v.quad_error, v.tail_bound, s > t};
                    row.abs_error = std::abs(row.prelimit - row.limit);
                    row.rel_error = row.abs_error / std::abs(row.limit);
                    table.rows[p * nN + j] = row;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int nw = std::max(1, std::min<int>(setup.workers, static_cast<int>(nN)));
    std::vector<std::thread> pool;
    for (int i = 1; i < nw; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    table.contour_rule = rules.back();
    for (std::size_t p = 0; p < points.size(); ++p) {
        ConvergePointVerdict v{points[p], true, false};
        for (std::size_t j = 1; j < nN; ++j)
            if (!(table.rows[p * nN + j].abs_error < table.rows[p * nN + j - 1].abs_error)) v.decreasing = false;
        v.below_threshold = table.rows[p * nN + nN - 1].rel_error < setup.threshold;
        table.verdicts.push_back(v);
    }
    return table;
}

}  // namespace hslpp::kernel
