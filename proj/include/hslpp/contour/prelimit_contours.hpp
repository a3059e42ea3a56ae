#pragma once

#include <string>
#include <vector>

#include "hslpp/contour/contour.hpp"
#include "hslpp/core/scaling.hpp"

namespace hslpp::contour {

enum class Regime { Subcritical, Critical };

struct BigContourParams {
    double theta0 = 5.0 * 3.14159265358979323846 / 12.0;
    double R0 = 0.0;  // <= 0 selects 1/q + 1/2
};

struct PrelimitContours {
    // Full closed contours.
    Contour Gamma, gamma, gamma_tilde;
    // Parts kept by the evaluator (near z_c, off the negative axis) and the discarded outer arcs.
    Contour Gamma_local, gamma_local, gamma_tilde_local;
    Contour Gamma_drop, gamma_drop, gamma_tilde_drop;
    double theta0 = 0, R0 = 0;
    double c = 0;                // boundary parameter the contours were built for
    double r1 = 0, r2 = 0;       // signed inner radii (absolute units)
    double r1_coef = 0, r2_coef = 0;  // r1, r2 in units of N^{-1/3} as used by the rule
    std::string rule;            // "standard", "adjusted" or "trisection"
    bool radial_nested = false;  // min |z| on Gamma > max |w| on gamma
    double Gamma_min_modulus = 0, gamma_max_modulus = 0;
};

// Gamma_N, gamma_N, gamma~_N. The critical regime uses c = z_c - varpi / (sigma N^{1/3}) and ignores `c`.
// Spike strengths alpha~_j may be empty. Throws ParameterError("N too small ...") when no rule
// produces contours with the required topology.
PrelimitContours prelimit_contours(const ScalingConstants& k, int N, Regime regime, double c,
                                   const std::vector<double>& spike_strengths, double varpi = 0.0,
                                   const BigContourParams& big = {});

// The pole 1/a_l for strength alpha~: z_c + alpha~ / (sigma N^{1/3}).
double spike_pole(const ScalingConstants& k, int N, double alpha);

}  // namespace hslpp::contour
