#include "hslpp/lpp/paths.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "hslpp/core/errors.hpp"

namespace hslpp::lpp {

long g1(const WeightMatrix& w, int m, int n) {
    if (m < 1 || n < 1 || m > w.n() || n > w.n())
        throw RangeError("g1 indices (" + std::to_string(m) + "," + std::to_string(n) + ") outside [1," +
                         std::to_string(w.n()) + "]");
    std::vector<long> g(m, 0);
    for (int j = 0; j < n; ++j) {
        long below = 0;
        for (int i = 0; i < m; ++i) {
            g[i] = w(i, j) + std::max(below, g[i]);
            below = g[i];
        }
    }
    return g[m - 1];
}

std::vector<long> g1_column(const WeightSampler& w, int m_max, int n) {
    if (m_max < 1 || n < 1 || m_max > w.n() || n > w.n()) throw RangeError("g1_column indices outside the array");
    std::vector<long> g(m_max, 0);
    for (int j = 0; j < n; ++j) {
        long below = 0;
        for (int i = 0; i < m_max; ++i) {
            g[i] = w(i, j) + std::max(below, g[i]);
            below = g[i];
        }
    }
    return g;
}

namespace {

struct PathSet {
    std::uint32_t mask;
    long weight;
};

// All up-right paths between two cells as occupancy masks over an m x n grid.
void enumerate_paths(const WeightMatrix& w, int n, int a, int b, int a1, int b1, std::uint32_t mask, long sum,
                     std::vector<PathSet>& out) {
    mask |= 1u << (a * n + b);
    sum += w(a, b);
    if (a == a1 && b == b1) {
        out.push_back({mask, sum});
        return;
    }
    if (a < a1) enumerate_paths(w, n, a + 1, b, a1, b1, mask, sum, out);
    if (b < b1) enumerate_paths(w, n, a, b + 1, a1, b1, mask, sum, out);
}

}  // namespace

long gk_bruteforce(const WeightMatrix& w, int m, int n, int k) {
    if (m < 1 || n < 1 || m > w.n() || n > w.n()) throw RangeError("gk_bruteforce indices outside the array");
    if (k < 1) throw ParameterError("k must be >= 1");
    if (m * n > 25) throw GuardError("gk_bruteforce is oracle-only: m*n = " + std::to_string(m * n) + " exceeds 25 cells");
    if (k >= std::min(m, n) + 1) {
        long s = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) s += w(i, j);
        return s;
    }
    std::vector<std::vector<PathSet>> paths(k);
    for (int idx = 0; idx < k; ++idx) enumerate_paths(w, n, 0, idx, m - 1, n - k + idx, 0u, 0, paths[idx]);

    std::unordered_map<std::uint64_t, long> memo;
    constexpr long kInfeasible = -1;
    auto best = [&](auto&& self, int idx, std::uint32_t used) -> long {
        if (idx == k) return 0;
        const std::uint64_t key = (static_cast<std::uint64_t>(idx) << 32) | used;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        long result = kInfeasible;
        for (const auto& p : paths[idx]) {
            if (p.mask & used) continue;
            const long rest = self(self, idx + 1, used | p.mask);
            if (rest != kInfeasible) result = std::max(result, p.weight + rest);
        }
        memo.emplace(key, result);
        return result;
    };
    return best(best, 0, 0u);
}

void RowInsertionTableau::insert(int v) {
    for (auto& row : rows_) {
        auto it = std::upper_bound(row.begin(), row.end(), v);
        if (it == row.end()) {
            row.push_back(v);
            return;
        }
        std::swap(*it, v);
    }
    rows_.push_back({v});
}

void RowInsertionTableau::insert(int v, int multiplicity) {
    for (int r = 0; r < multiplicity; ++r) insert(v);
}

Partition RowInsertionTableau::shape() const {
    std::vector<int> parts;
    parts.reserve(rows_.size());
    for (const auto& row : rows_) parts.push_back(static_cast<int>(row.size()));
    return Partition(std::move(parts));
}

Partition greene_shape(const WeightMatrix& w, int m, int n) {
    if (m < 0 || n < 0 || m > w.n() || n > w.n()) throw RangeError("greene_shape indices outside the array");
    RowInsertionTableau t;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) t.insert(j, w(i, j));
    return t.shape();
}

LambdaProfile lambda_profile(const WeightMatrix& w, int N) {
    if (N < 0 || N > w.n()) throw RangeError("lambda_profile needs N <= array size");
    LambdaProfile prof;
    prof.N = N;
    prof.lambdas.reserve(N + 1);
    prof.lambdas.emplace_back();
    RowInsertionTableau t;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) t.insert(j, w(i, j));
        prof.lambdas.push_back(t.shape());
    }
    return prof;
}

bool profile_interlaces(const LambdaProfile& profile) {
    for (std::size_t m = 1; m < profile.lambdas.size(); ++m)
        if (!interlaces(profile.lambdas[m], profile.lambdas[m - 1])) return false;
    return true;
}

}  // namespace hslpp::lpp
