#pragma once

#include <complex>
#include <vector>

#include "hslpp/contour/prelimit_contours.hpp"
#include "hslpp/contour/quadrature.hpp"
#include "hslpp/core/scaling.hpp"
#include "hslpp/kernel/kgeo.hpp"

namespace hslpp::kernel {

using contour::Regime;

enum class PrelimitPart { I11, I12, I22, R12 };

struct PrelimitConfig {
    ScalingConstants constants;
    int N = 1000;
    Regime regime = Regime::Subcritical;
    double c = 1.0;                 // subcritical boundary parameter
    double varpi = 0.0;             // critical shift
    std::vector<double> spikes;     // alpha~_j
    contour::BigContourParams big;
    contour::QuadratureSpec quad{16, 512, 1e-10, 0.0};
    double tail_tol = 1e-6;         // absolute bound on the discarded contour pieces
};

struct PrelimitValue {
    cplx value;
    double quad_error = 0;
    double tail_bound = 0;
};

// Scaled finite-N kernel on the truncated contours. Entries of the assembled kernel are
// K_11 = I_11, K_12 = I_12 + R_12, K_21(s,x;t,y) = -K_12(t,y;s,x), K_22 = I_22; in the critical
// regime the diagonal blocks carry N^{2/3} and N^{-2/3}.
class PrelimitKernel {
public:
    explicit PrelimitKernel(PrelimitConfig cfg);

    PrelimitValue part(PrelimitPart which, double s, double x, double t, double y) const;
    PrelimitValue entry(Component comp, double s, double x, double t, double y) const;

    const contour::PrelimitContours& contours() const { return pc_; }
    const PrelimitConfig& config() const { return cfg_; }
    double c() const { return pc_.c; }
    // T_s = floor(s N^{2/3})
    long time_shift(double s) const;
    // Spike parameters a_l = 1 / (z_c + alpha~ / (sigma N^{1/3})).
    std::vector<double> spike_a() const;

private:
    PrelimitValue double_integral(PrelimitPart which, double s, double x, double t, double y) const;
    PrelimitValue r12(double s, double x, double t, double y) const;

    PrelimitConfig cfg_;
    contour::PrelimitContours pc_;
    double scale_;   // sigma z_c N^{1/3}
    double frac_;    // kappa N - floor(kappa N)
    double focus_scale_;
};

}  // namespace hslpp::kernel
