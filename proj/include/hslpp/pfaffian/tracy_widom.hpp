#pragma once

#include <vector>

namespace hslpp::pfaffian {

struct CdfPoint {
    double s;
    double F;
};

// GUE Tracy-Widom law F2(s) = det(I - K_Ai) on L2(s, inf), Nystrom discretisation with
// Gauss-Legendre nodes after the substitution x = s - scale * log(1 - u).
class TracyWidomGUE {
public:
    explicit TracyWidomGUE(int nodes = 80, double scale = 4.0);

    // Throws NumericalError when doubling the node count moves the value by more than 1e-8.
    double cdf(double s) const;
    // No a posteriori check; used inside moment integration.
    double cdf_raw(double s, int nodes) const;

    std::vector<CdfPoint> table(const std::vector<double>& grid) const;

    struct Moments {
        double mean;
        double variance;
    };
    // From integrals of the CDF over [lo, hi]; the mass outside is below 1e-12.
    Moments moments(double lo = -12.0, double hi = 8.0) const;

    int nodes() const { return nodes_; }

private:
    int nodes_;
    double scale_;
};

}  // namespace hslpp::pfaffian
