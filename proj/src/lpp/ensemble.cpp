#include "hslpp/lpp/ensemble.hpp"

#include <cmath>
#include <string>

#include "hslpp/core/errors.hpp"

namespace hslpp::lpp {

namespace {

double curve_at(const LambdaProfile& prof, int i, long s) {
    if (s <= 0) return 0.0;
    if (s >= prof.N) return prof.lambdas[prof.N][i - 1];
    return prof.lambdas[s][i - 1];
}

}  // namespace

double interpolated_curve(const LambdaProfile& profile, int i, double s) {
    const double fl = std::floor(s);
    const long k = static_cast<long>(fl);
    const double theta = s - fl;
    const double lo = curve_at(profile, i, k);
    if (theta == 0.0) return lo;
    return (1.0 - theta) * lo + theta * curve_at(profile, i, k + 1);
}

long time_shift(double t, int N) {
    return time_shift_floor(t, N);
}

RescaledEnsemble rescale(const LambdaProfile& profile, const ScalingConstants& consts, const std::vector<double>& t_grid,
                         int curve_count) {
    const int N = profile.N;
    if (N < 1) throw RangeError("rescale needs N >= 1");
    if (curve_count < 1) throw ParameterError("curve_count must be >= 1");
    const long base = static_cast<long>(std::floor(consts.kappa * N));
    const double n23 = n_two_thirds(N);
    for (double t : t_grid) {
        const long m = base + time_shift(t, N);
        if (m < 1 || m > N)
            throw RangeError("inadmissible t = " + std::to_string(t) + ": floor(kappa N) + floor(t N^(2/3)) = " +
                             std::to_string(m) + " outside [1," + std::to_string(N) + "]");
    }
    RescaledEnsemble out;
    out.N = N;
    out.constants = consts;
    out.t = t_grid;
    out.centering = static_cast<long>(std::floor(consts.h * N));
    out.prefactor = 1.0 / (std::sqrt(consts.p * (1.0 + consts.p)) * std::cbrt(static_cast<double>(N)));
    for (int i = 1; i <= curve_count; ++i) {
        out.curves.push_back(i);
        std::vector<double> row;
        row.reserve(t_grid.size());
        for (double t : t_grid) {
            const double s = base + t * n23;
            row.push_back(out.prefactor * (interpolated_curve(profile, i, s) - out.centering - consts.p * t * n23));
        }
        out.values.push_back(std::move(row));
    }
    return out;
}

}  // namespace hslpp::lpp
