#include "hslpp/core/scaling.hpp"

#include <cmath>
#include <string>

#include "hslpp/core/errors.hpp"

namespace hslpp {

double lln_profile(double q, double x) {
    return q * (q + 2.0 * std::sqrt(x) + q * x) / (1.0 - q * q);
}

ScalingConstants scaling_constants(double q, double kappa) {
    if (!(q > 0.0 && q < 1.0)) throw ParameterError("q must lie in (0,1), got " + std::to_string(q));
    if (!(kappa > 0.0 && kappa <= 1.0)) throw ParameterError("kappa must lie in (0,1], got " + std::to_string(kappa));
    const double rk = std::sqrt(kappa);
    const double omq2 = 1.0 - q * q;
    ScalingConstants c;
    c.q = q;
    c.kappa = kappa;
    c.h = lln_profile(q, kappa);
    c.p = q * (1.0 + q * rk) / (omq2 * rk);
    c.z_c = (1.0 + q * rk) / (q + rk);
    c.sigma = std::cbrt(q) * std::pow(q + rk, 5.0 / 3.0) /
              (std::pow(kappa, 1.0 / 6.0) * omq2 * std::cbrt(1.0 + q * rk));
    c.f = std::cbrt(q) / (2.0 * std::pow(kappa, 2.0 / 3.0) * std::cbrt(q + rk) * std::cbrt(1.0 + q * rk));
    return c;
}

double n_two_thirds(int N) {
    const double c = std::cbrt(static_cast<double>(N));
    return c * c;
}

long time_shift_floor(double t, int N) {
    const double v = t * n_two_thirds(N);
    const double r = std::round(v);
    return static_cast<long>(std::abs(v - r) < 1e-9 ? r : std::floor(v));
}

double variant_sigma(double q, double kappa) {
    const double rk = std::sqrt(kappa);
    return std::cbrt(q) * std::pow(q + rk, 5.0 / 3.0) /
           (std::pow(kappa, 1.0 / 6.0) * std::pow(1.0 - q * q, 2.0 / 3.0) * std::cbrt(1.0 + q * rk));
}

double variant_f(double q, double kappa) {
    const double rk = std::sqrt(kappa);
    return std::cbrt(q) / (2.0 * std::pow(kappa, 2.0 / 3.0) * std::pow(1.0 - q * q, 2.0 / 3.0) *
                           std::cbrt(q + rk) * std::cbrt(1.0 + q * rk));
}

}  // namespace hslpp
