#include "hslpp/kernel/sg.hpp"

#include <cmath>

#include "hslpp/core/errors.hpp"

namespace hslpp::kernel {

namespace {
constexpr double kSingularDistance = 1e-12;
}

SGFunctions::SGFunctions(const ScalingConstants& c) : c_(c) {
    const double z = c.z_c;
    s_c_ = std::log(1.0 - c.q / z) - c.kappa * std::log(1.0 - c.q * z) - c.h * std::log(z);
    g_c_ = -std::log(1.0 - c.q * z) - c.p * std::log(z);
}

void SGFunctions::guard(cplx z, bool branch) const {
    if (std::abs(z) < kSingularDistance || std::abs(z - c_.q) < kSingularDistance ||
        std::abs(z - 1.0 / c_.q) < kSingularDistance)
        throw SingularEvaluation("S/G evaluated at a singular point");
    if (branch && z.imag() == 0.0 && z.real() <= 0.0) throw SingularEvaluation("S/G evaluated on the branch cut");
}

cplx SGFunctions::S(cplx z) const {
    guard(z, true);
    return std::log(1.0 - c_.q / z) - c_.kappa * std::log(1.0 - c_.q * z) - c_.h * std::log(z);
}

cplx SGFunctions::G(cplx z) const {
    guard(z, true);
    return -std::log(1.0 - c_.q * z) - c_.p * std::log(z);
}

cplx SGFunctions::dS(cplx z) const {
    guard(z, false);
    return c_.q / (z * (z - c_.q)) + c_.kappa * c_.q / (1.0 - c_.q * z) - c_.h / z;
}

cplx SGFunctions::dG(cplx z) const {
    guard(z, false);
    return c_.q / (1.0 - c_.q * z) - c_.p / z;
}

double SGFunctions::re_Sbar(cplx z) const {
    guard(z, false);
    return std::log(std::abs(1.0 - c_.q / z)) - c_.kappa * std::log(std::abs(1.0 - c_.q * z)) -
           c_.h * std::log(std::abs(z)) - s_c_;
}

double SGFunctions::re_Gbar(cplx z) const {
    guard(z, false);
    return -std::log(std::abs(1.0 - c_.q * z)) - c_.p * std::log(std::abs(z)) - g_c_;
}

cplx SpikeFactor::W(cplx z) const {
    cplx w = 1.0;
    for (double a : a_) w *= (1.0 - a / z) * (1.0 - q_ * z) / ((1.0 - q_ / z) * (1.0 - a * z));
    return w;
}

cplx SpikeFactor::log_W(cplx z) const {
    cplx s = 0.0;
    for (double a : a_)
        s += std::log(1.0 - a / z) + std::log(1.0 - q_ * z) - std::log(1.0 - q_ / z) - std::log(1.0 - a * z);
    return s;
}

double SpikeFactor::log_abs_W(cplx z) const { return std::real(log_W(z)); }

}  // namespace hslpp::kernel
