#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hslpp/contour/quadrature.hpp"

namespace hslpp::kernel {

using cplx = std::complex<double>;

enum class Component { K11, K12, K21, K22 };

struct KgeoRadii {
    double r1 = 0;    // K11: both variables
    double r12z = 0;  // K12: z circle
    double r12w = 0;  // K12: w circle
    double r2 = 0;    // K22: both variables
};

// Admissible radius windows; upper bounds are +inf where unrestricted.
struct KgeoWindows {
    double r1_lo, r1_hi;
    double r12z_lo, r12z_hi;
    double r12w_lo, r12w_hi;
    double r2_lo, r2_hi;
};

struct KgeoContext {
    int N = 1;
    double q = 0.5;
    double c = 0.5;
    std::vector<double> spikes;  // a_{l_j}
    std::vector<int> M;          // time labels: M[u-1] = M_u, strictly increasing in [1, N]
    contour::QuadratureSpec quad{64, 8192, 1e-13, 0.0};
    static constexpr int kMaxN = 200;

    KgeoWindows windows() const;
    KgeoRadii default_radii(bool u_le_v) const;
    void validate() const;
};

// Finite-N correlation kernel on circles; time labels u, v are 1-based, x, y integer locations.
// The optional radii override the defaults and are checked against the admissible windows.
struct KgeoValue {
    cplx value;
    double error;
};

KgeoValue kgeo(Component comp, int u, long x, int v, long y, const KgeoContext& ctx,
               const std::optional<KgeoRadii>& radii = std::nullopt);

}  // namespace hslpp::kernel
