#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hslpp/contour/prelimit_contours.hpp"
#include "hslpp/core/scaling.hpp"

namespace hslpp::kernel {

struct DescentGrids {
    std::vector<std::pair<double, double>> q_kappa{{0.3, 0.2}, {0.3, 0.5}, {0.3, 0.8}, {0.5, 0.2}, {0.5, 0.5},
                                                   {0.5, 0.8}, {0.7, 0.2}, {0.7, 0.5}, {0.7, 0.8}};
    std::vector<double> theta{0.3 * 3.14159265358979323846, 5.0 * 3.14159265358979323846 / 12.0,
                              0.45 * 3.14159265358979323846};
    int radial_points = 41;     // r in [0, delta]
    int circle_radii = 12;      // R in (0, z_c] and (0, 3/q]
    int circle_angles = 60;     // theta in (0.01, pi - 0.01)
    std::vector<double> big_eps{0.02, 0.05, 0.1, 0.2};
    int big_samples = 4000;
    contour::BigContourParams big;
    double slack = 1e-14;       // absolute rounding allowance on every comparison
};

struct DescentEntry {
    double q, kappa;
    std::string check;  // TaylorS, TaylorG, CritDecayS1, CritGrowS1, CritDecayG1, SmallCircleS, MedCircleG, BigContour
    std::string point;  // grid coordinates
    double value;       // left-hand side
    double bound;       // right-hand side
    bool pass;
};

struct DescentConstants {
    double delta0, C0, eps1_min, delta1_min, eps2, delta2;
};

struct DescentReport {
    std::vector<DescentEntry> entries;
    std::vector<std::pair<std::pair<double, double>, DescentConstants>> constants;
    bool all_pass() const;
    std::size_t failures() const;
};

// delta0 = min(1, z_c - 1, 1/q - z_c) / 2; C0 = max over |z - z_c| = delta0 of the Taylor remainders
// (maximum principle makes the circle the worst case).
DescentConstants descent_constants(const ScalingConstants& k, double theta);

DescentReport verify_descent(const DescentGrids& grids = {});

// Analytic theta-derivative of Re S on the circle |z| = R (b^2 = kappa in the closed form).
double circle_derivative_S(const ScalingConstants& k, double R, double theta);
double circle_derivative_G(const ScalingConstants& k, double R, double theta);

}  // namespace hslpp::kernel
