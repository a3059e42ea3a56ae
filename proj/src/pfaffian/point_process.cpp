#include "hslpp/pfaffian/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hslpp/core/errors.hpp"
#include "hslpp/pfaffian/pfaffian.hpp"

namespace hslpp::pfaffian {

using kernel::Component;

double PfaffianKernel::density(const LatticePoint& p) const { return block(p, p)(0, 1).real(); }

KgeoPfaffianKernel::KgeoPfaffianKernel(kernel::KgeoContext ctx) : ctx_(std::move(ctx)) { ctx_.validate(); }

std::complex<double> KgeoPfaffianKernel::entry(Component c, const LatticePoint& p, const LatticePoint& q) const {
    const auto key = std::make_tuple(static_cast<int>(c), p.label, p.x, q.label, q.x);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const auto v = kernel::kgeo(c, p.label, p.x, q.label, q.x, ctx_).value;
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, v);
    return v;
}

Eigen::Matrix2cd KgeoPfaffianKernel::block(const LatticePoint& p, const LatticePoint& q) const {
    Eigen::Matrix2cd b;
    // Antisymmetric components are evaluated once per unordered pair.
    auto anti = [&](Component c) -> std::complex<double> {
        if (p == q) return 0.0;
        return p < q ? entry(c, p, q) : -entry(c, q, p);
    };
    b(0, 0) = anti(Component::K11);
    b(0, 1) = entry(Component::K12, p, q);
    b(1, 0) = -entry(Component::K12, q, p);
    b(1, 1) = anti(Component::K22);
    return b;
}

Eigen::MatrixXcd kernel_matrix(std::vector<LatticePoint> points, const PfaffianKernel& K) {
    std::sort(points.begin(), points.end());
    const auto k = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i; j < k; ++j) {
            const Eigen::Matrix2cd b = K.block(points[i], points[j]);
            if (i == j) {
                A(2 * i, 2 * i + 1) = b(0, 1);
                A(2 * i + 1, 2 * i) = -b(0, 1);
            } else {
                A.block<2, 2>(2 * i, 2 * j) = b;
                A.block<2, 2>(2 * j, 2 * i) = -b.transpose();
            }
        }
    }
    return A;
}

double correlation(std::vector<LatticePoint> points, const PfaffianKernel& K) {
    if (points.empty()) return 1.0;
    return pfaffian(kernel_matrix(std::move(points), K)).real();
}

double window_gap(const std::vector<LatticePoint>& window, const PfaffianKernel& K) {
    Eigen::MatrixXcd A = -kernel_matrix(window, K);
    for (Eigen::Index i = 0; i < A.rows(); i += 2) {
        A(i, i + 1) += 1.0;
        A(i + 1, i) -= 1.0;
    }
    return pfaffian(A).real();
}

GapResult gap_probability(long s, int label, const PfaffianKernel& K, double tail_target, long max_window) {
    GapResult r;
    r.threshold = s;
    // Grow the window until the density has decayed geometrically below the target.
    double prev = K.density({label, s});
    long hi = s;
    double tail = 0.0;
    bool done = false;
    for (long x = s + 1; x <= s + max_window; ++x) {
        const double d = K.density({label, x});
        const double ratio = prev > 0.0 ? d / prev : 0.0;
        if (d < 0.1 * tail_target && ratio >= 0.0 && ratio < 0.95) {
            tail = d + d * ratio / (1.0 - ratio);  // d(x) plus geometric continuation
            hi = x - 1;
            done = true;
            break;
        }
        prev = d;
    }
    if (!done) throw TruncationError("gap probability: density does not decay within the window cap", prev);
    std::vector<LatticePoint> window;
    for (long x = s; x <= hi; ++x) window.push_back({label, x});
    r.window_hi = hi;
    r.tail_bound = tail;
    r.probability = window_gap(window, K);
    return r;
}

}  // namespace hslpp::pfaffian
