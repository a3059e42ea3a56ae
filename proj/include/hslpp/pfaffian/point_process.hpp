#pragma once

#include <Eigen/Dense>
#include <compare>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "hslpp/kernel/kgeo.hpp"

namespace hslpp::pfaffian {

struct LatticePoint {
    int label = 1;  // 1-based time label
    long x = 0;
    auto operator<=>(const LatticePoint&) const = default;
};

// 2x2 matrix kernel of a Pfaffian point process on labels x Z (counting reference measure).
class PfaffianKernel {
public:
    virtual ~PfaffianKernel() = default;
    // [[K11, K12], [K21, K22]](p; q)
    virtual Eigen::Matrix2cd block(const LatticePoint& p, const LatticePoint& q) const = 0;
    // Expected number of points at p: K12(p; p).
    virtual double density(const LatticePoint& p) const;
};

// Exact finite-N kernel with memoised entries.
class KgeoPfaffianKernel : public PfaffianKernel {
public:
    explicit KgeoPfaffianKernel(kernel::KgeoContext ctx);
    Eigen::Matrix2cd block(const LatticePoint& p, const LatticePoint& q) const override;
    const kernel::KgeoContext& context() const { return ctx_; }

private:
    std::complex<double> entry(kernel::Component c, const LatticePoint& p, const LatticePoint& q) const;
    kernel::KgeoContext ctx_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, int, long, int, long>, std::complex<double>> cache_;
};

// 2k x 2k skew matrix [K(p_i, p_j)] with points sorted; lower blocks filled by skew symmetry.
Eigen::MatrixXcd kernel_matrix(std::vector<LatticePoint> points, const PfaffianKernel& K);

// k-point correlation rho(p_1..p_k) = Pf [K(p_i, p_j)].
double correlation(std::vector<LatticePoint> points, const PfaffianKernel& K);

struct GapResult {
    long threshold = 0;
    long window_hi = 0;    // window is [threshold, window_hi]
    double probability = 0;
    double tail_bound = 0;  // expected number of points beyond the window
};

// P(no point in [s, inf)) at one time label, as Pf(J - K) on [s, s + M] with M grown until the
// first-moment tail sum_{x > s+M} K12(x,x) falls below tail_target.
GapResult gap_probability(long s, int label, const PfaffianKernel& K, double tail_target = 1e-8, long max_window = 600);

// Pf(J - K) on an explicit window.
double window_gap(const std::vector<LatticePoint>& window, const PfaffianKernel& K);

}  // namespace hslpp::pfaffian
