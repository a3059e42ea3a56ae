#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "hslpp/kernel/airy.hpp"
#include "hslpp/kernel/prelimit.hpp"

namespace hslpp::kernel {

struct ConvergeSetup {
    double q = 0.5, kappa = 0.25;
    double c = 0.5;  // subcritical only
    Regime regime = Regime::Subcritical;
    double varpi = 0.0;
    std::vector<double> spikes;
    std::vector<int> N_list{100, 1000, 10000};
    double threshold = 2e-2;  // final relative error
    int workers = 1;
    contour::QuadratureSpec quad{16, 512, 1e-10, 0.0};
    // Tail bounds are reported per row; at N = 100 they reach 1e-4, so no cap by default.
    double tail_tol = std::numeric_limits<double>::infinity();
};

struct ConvergeRow {
    std::array<double, 4> point;  // s, x, t, y
    int N;
    double prelimit, limit;
    double abs_error, rel_error;
    double quad_error, tail_bound;
    bool r_part;  // s > t
};

struct ConvergePointVerdict {
    std::array<double, 4> point;
    bool decreasing;
    bool below_threshold;
};

struct ConvergeTable {
    std::vector<ConvergeRow> rows;  // point-major, N increasing
    std::vector<ConvergePointVerdict> verdicts;
    std::string contour_rule;  // rule of the largest N
    bool pass() const;
};

ConvergeTable converge_check(const std::vector<std::array<double, 4>>& points, const ConvergeSetup& setup);

}  // namespace hslpp::kernel
