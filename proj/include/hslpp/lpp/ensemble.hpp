#pragma once

#include <vector>

#include "hslpp/core/scaling.hpp"
#include "hslpp/lpp/paths.hpp"

namespace hslpp::lpp {

struct RescaledEnsemble {
    std::vector<int> curves;                 // 1-based curve indices
    std::vector<double> t;                   // sample grid
    std::vector<std::vector<double>> values; // values[curve][t]
    int N = 0;
    ScalingConstants constants;
    long centering = 0;                      // floor(h N)
    double prefactor = 0.0;                  // [p(1+p)]^(-1/2) N^(-1/3)
};

// U_i(s): lambda_i(s,N) on 1..N, 0 for s <= 0, lambda_i(N,N) beyond N, linear in between.
double interpolated_curve(const LambdaProfile& profile, int i, double s);

// T_t = floor(t N^(2/3)) with floor (not truncation) for negative t.
long time_shift(double t, int N);

RescaledEnsemble rescale(const LambdaProfile& profile, const ScalingConstants& consts, const std::vector<double>& t_grid,
                         int curve_count = 1);

}  // namespace hslpp::lpp
