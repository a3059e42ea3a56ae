#pragma once

namespace hslpp {

struct ScalingConstants {
    double q = 0;
    double kappa = 0;
    double h = 0;
    double p = 0;
    double f = 0;
    double z_c = 0;
    double sigma = 0;
};

// Bulk scaling constants. kappa = 1 is accepted (edge values), kappa in (0,1) otherwise.
ScalingConstants scaling_constants(double q, double kappa);

// Law-of-large-numbers profile h(x) = q(q + 2 sqrt(x) + q x) / (1 - q^2).
double lln_profile(double q, double x);

// N^(2/3) as cbrt(N)^2, exact for perfect cubes.
double n_two_thirds(int N);
// floor(t N^(2/3)); products within 1e-9 of an integer snap to it first, so t = 0.3, N = 1000 gives 30.
long time_shift_floor(double t, int N);

// Variant closed forms of sigma and f with another power of (1-q^2); they violate
// S'''(z_c) = 2 sigma^3 and G''(z_c) = 2 f sigma^2 by a factor (1-q^2)^(1/3) resp.
// (1-q^2)^(-2/3) and are kept for reporting only.
double variant_sigma(double q, double kappa);
double variant_f(double q, double kappa);

}  // namespace hslpp
