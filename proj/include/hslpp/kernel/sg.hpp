#pragma once

#include <complex>
#include <vector>

#include "hslpp/core/scaling.hpp"

namespace hslpp::kernel {

using cplx = std::complex<double>;

// S(z) = log(1-q/z) - kappa log(1-qz) - h log z,  G(z) = -log(1-qz) - p log z (principal branch).
class SGFunctions {
public:
    explicit SGFunctions(const ScalingConstants& c);

    cplx S(cplx z) const;
    cplx G(cplx z) const;
    cplx Sbar(cplx z) const { return S(z) - s_c_; }
    cplx Gbar(cplx z) const { return G(z) - g_c_; }
    cplx dS(cplx z) const;
    cplx dG(cplx z) const;

    // Real parts depend only on moduli, so they are continuous across the branch cut.
    double re_Sbar(cplx z) const;
    double re_Gbar(cplx z) const;

    const ScalingConstants& constants() const { return c_; }

private:
    void guard(cplx z, bool branch) const;
    ScalingConstants c_;
    double s_c_, g_c_;
};

// W(z) = prod_j (1 - a_j/z)(1 - qz) / ((1 - q/z)(1 - a_j z)); identically 1 without spikes.
class SpikeFactor {
public:
    SpikeFactor(double q, std::vector<double> a) : q_(q), a_(std::move(a)) {}
    cplx W(cplx z) const;
    // Any branch; exp(log_W) = W.
    cplx log_W(cplx z) const;
    double log_abs_W(cplx z) const;
    bool trivial() const { return a_.empty(); }
    const std::vector<double>& a() const { return a_; }

private:
    double q_;
    std::vector<double> a_;
};

}  // namespace hslpp::kernel
