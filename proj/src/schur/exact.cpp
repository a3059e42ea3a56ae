#include "hslpp/schur/exact.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "hslpp/core/errors.hpp"

namespace hslpp::schur {

namespace {

// Partitions nu with mu <= nu <= lambda in the interlacing order (mu interlaces nu, nu interlaces lambda).
void between(const Partition& lambda, const Partition& mu, std::vector<int>& cur, std::size_t i,
             const std::function<void(const Partition&)>& emit) {
    const std::size_t len = lambda.length();
    if (i == len) {
        emit(Partition(cur));
        return;
    }
    const int lo = std::max(lambda[i + 1], mu[i]);
    int hi = lambda[i];
    if (i > 0) hi = std::min(hi, mu[i - 1]);
    for (int v = lo; v <= hi; ++v) {
        cur[i] = v;
        between(lambda, mu, cur, i + 1, emit);
    }
}

double skew_schur_rec(const Partition& lambda, const Partition& mu, std::span<const double> vars,
                      std::map<std::pair<Partition, std::size_t>, double>& memo) {
    const std::size_t n = vars.size();
    if (n == 0) return lambda == mu ? 1.0 : 0.0;
    if (n == 1) {
        if (!interlaces(lambda, mu)) return 0.0;
        return std::pow(vars[0], static_cast<double>(lambda.weight() - mu.weight()));
    }
    const auto key = std::make_pair(lambda, n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double sum = 0.0;
    std::vector<int> cur(lambda.length(), 0);
    const double xn = vars[n - 1];
    between(lambda, mu, cur, 0, [&](const Partition& nu) {
        const double inner = skew_schur_rec(nu, mu, vars.first(n - 1), memo);
        if (inner != 0.0) sum += inner * std::pow(xn, static_cast<double>(lambda.weight() - nu.weight()));
    });
    memo.emplace(key, sum);
    return sum;
}

}  // namespace

double skew_schur(const Partition& lambda, const Partition& mu, std::span<const double> vars) {
    for (std::size_t i = 0; i < std::max(lambda.length(), mu.length()); ++i)
        if (mu[i] > lambda[i]) return 0.0;
    std::map<std::pair<Partition, std::size_t>, double> memo;
    return skew_schur_rec(lambda, mu, vars, memo);
}

double tau(const Partition& lambda, double c) {
    long alt = 0;
    for (std::size_t i = 0; i < lambda.length(); ++i) alt += (i % 2 == 0 ? 1 : -1) * lambda[i];
    if (alt == 0) return 1.0;
    return std::pow(c, static_cast<double>(alt));
}

SchurWeightContext::SchurWeightContext(std::vector<double> a_, double c_)
    : N(static_cast<int>(a_.size())), a(std::move(a_)), c(c_) {
    if (N < 1) throw ParameterError("Schur context needs N >= 1");
    if (!(c >= 0.0)) throw ParameterError("c must be >= 0");
    for (int i = 0; i < N; ++i) {
        if (!(a[i] > 0.0)) throw ParameterError("a_" + std::to_string(i + 1) + " must be positive");
        if (!(c * a[i] < 1.0)) throw ParameterError("c * a_" + std::to_string(i + 1) + " >= 1");
        for (int j = 0; j < i; ++j)
            if (!(a[i] * a[j] < 1.0))
                throw ParameterError("a_" + std::to_string(j + 1) + " * a_" + std::to_string(i + 1) + " >= 1");
    }
}

double SchurWeightContext::normalization() const {
    double z = 1.0;
    for (int i = 0; i < N; ++i) {
        z /= 1.0 - c * a[i];
        for (int j = i + 1; j < N; ++j) z /= 1.0 - a[i] * a[j];
    }
    return z;
}

double process_weight(const Sequence& seq, const SchurWeightContext& ctx) {
    if (static_cast<int>(seq.size()) != ctx.N)
        throw ParameterError("sequence length " + std::to_string(seq.size()) + " != N = " + std::to_string(ctx.N));
    double w = tau(seq[0], ctx.c);
    for (int j = 0; j < ctx.N; ++j) {
        const Partition next = j + 1 < ctx.N ? seq[j + 1] : Partition{};
        if (!interlaces(seq[j], next)) return 0.0;
        // lambda^{j+1} / lambda^{j+2} carries a_{N-j}.
        w *= std::pow(ctx.a[ctx.N - 1 - j], static_cast<double>(seq[j].weight() - next.weight()));
    }
    return w / ctx.normalization();
}

double total_weight_cdf(const SchurWeightContext& ctx, int cap) {
    // pmf of the total by convolution, truncated at cap.
    std::vector<double> pmf(cap + 1, 0.0);
    pmf[0] = 1.0;
    auto convolve = [&](double alpha, int step) {
        std::vector<double> next(cap + 1, 0.0);
        for (int s = 0; s <= cap; ++s) {
            if (pmf[s] == 0.0) continue;
            double pk = 1.0 - alpha;
            for (int k = 0; s + step * k <= cap; ++k) {
                next[s + step * k] += pmf[s] * pk;
                pk *= alpha;
            }
        }
        pmf.swap(next);
    };
    for (int i = 0; i < ctx.N; ++i) {
        convolve(ctx.c * ctx.a[i], 1);
        for (int j = i + 1; j < ctx.N; ++j) convolve(ctx.a[i] * ctx.a[j], 2);
    }
    double s = 0.0;
    for (double v : pmf) s += v;
    return s;
}

ExactLaw enumerate_law(const SchurWeightContext& ctx, int weight_cap) {
    if (ctx.N > 3) throw GuardError("enumerate_law is limited to N <= 3, got " + std::to_string(ctx.N));
    if (weight_cap < 0 || weight_cap > 40) throw GuardError("enumerate_law needs 0 <= weight_cap <= 40");
    ExactLaw law;
    law.weight_cap = weight_cap;
    const int N = ctx.N;

    // lambda^1 ranges over partitions with at most N parts and weight <= cap.
    std::vector<Partition> tops;
    std::function<void(std::vector<int>&, int, int)> gen = [&](std::vector<int>& cur, int remaining, int maxpart) {
        tops.emplace_back(cur);
        if (static_cast<int>(cur.size()) == N) return;
        for (int v = 1; v <= std::min(remaining, maxpart); ++v) {
            cur.push_back(v);
            gen(cur, remaining - v, v);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    gen(cur, weight_cap, weight_cap);

    // lambda^{j+1} interlaces below lambda^j and has at most N - j parts.
    Sequence seq(N);
    std::function<void(int)> descend = [&](int j) {
        if (j == N) {
            const double p = process_weight(seq, ctx);
            if (p > 0.0) {
                law.probabilities.emplace(seq, p);
                law.total += p;
            }
            return;
        }
        const Partition& parent = seq[j - 1];
        const std::size_t max_len = static_cast<std::size_t>(N - j);
        std::vector<int> child(std::min(parent.length(), max_len), 0);
        std::function<void(std::size_t)> pick = [&](std::size_t i) {
            if (i == child.size()) {
                seq[j] = Partition(child);
                descend(j + 1);
                return;
            }
            for (int v = parent[i + 1]; v <= parent[i]; ++v) {
                child[i] = v;
                pick(i + 1);
            }
        };
        pick(0);
    };
    for (const auto& top : tops) {
        seq[0] = top;
        descend(1);
    }
    law.deficit = 1.0 - law.total;
    law.tail_mass = 1.0 - total_weight_cdf(ctx, weight_cap);
    return law;
}

}  // namespace hslpp::schur
