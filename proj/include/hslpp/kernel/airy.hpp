#pragma once

#include <optional>
#include <vector>

#include "hslpp/contour/prelimit_contours.hpp"
#include "hslpp/contour/quadrature.hpp"
#include "hslpp/core/scaling.hpp"

namespace hslpp::kernel {

struct AirySpec {
    contour::QuadratureSpec quad{16, 512, 1e-13, 0.0};
    double cut = 40.0;        // rays end where the exponent drops this far below its maximum
    double extend_tol = 1e-13;
    int max_extensions = 12;
    // Optional explicit anchors (gamma + t1, beta + t2 in shifted variables).
    std::optional<double> z_anchor, w_anchor;
};

struct AiryValue {
    double value = 0;
    double imag_residue = 0;
    double error = 0;
    double z_anchor = 0, w_anchor = 0;  // shifted crossings gamma + t1, beta + t2
    double z_length = 0, w_length = 0;  // ray truncation lengths
};

// Gaussian cross term, present iff t2 > t1.
double airy_gaussian_term(double t1, double x1, double t2, double x2);

// Airy wanderer kernel K^Airy_{A,B}(t1,x1; t2,x2) by double ray quadrature.
AiryValue airy_wanderer(double t1, double x1, double t2, double x2, const std::vector<double>& A,
                        const std::vector<double>& B, const AirySpec& spec = {});

// Extended Airy kernel through the Airy-function integral representation (independent path).
double extended_airy(double t1, double x1, double t2, double x2);

// Classical Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y), diagonal Ai'(x)^2 - x Ai(x)^2.
double airy_kernel(double x, double y);

// Limit of the scaled K_12: gauge factor times K^Airy_{A,B}(-fs, x + f^2 s^2; -ft, y + f^2 t^2)
// with A = spike strengths and B = {} (subcritical) or {-varpi} (critical).
AiryValue limit_rhs(double s, double x, double t, double y, const ScalingConstants& k,
                    const std::vector<double>& spikes, contour::Regime regime, double varpi,
                    const AirySpec& spec = {});

// Limit of the residue part: -1/(2 pi i) int_{iR} exp(f (s-t) u^2 + (y-x) u) du for s > t, by quadrature.
double r_limit_quadrature(double s, double x, double t, double y, double f);
// Closed form -(4 pi f (s-t))^{-1/2} exp(-(y-x)^2 / (4 f (s-t))).
double r_limit_closed(double s, double x, double t, double y, double f);

}  // namespace hslpp::kernel
