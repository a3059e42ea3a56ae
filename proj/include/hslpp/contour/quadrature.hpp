#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hslpp/contour/contour.hpp"

namespace hslpp::contour {

struct QuadratureSpec {
    int nodes_per_segment = 64;  // >= 4
    int max_nodes = 1024;        // doubling cap
    double tol = 1e-12;          // relative
    double abs_tol = 0.0;
};

// Panels shrink near `point` down to `scale`: a panel is split while its length
// exceeds max(scale, grading * distance to point).
struct Focus {
    cplx point;
    double scale;
    double grading = 0.5;
};

struct Node {
    cplx z;
    cplx w;  // Gauss weight times dz/du
};

// Gauss-Legendre nodes and weights on [-1,1].
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

std::vector<Node> discretize(const Contour& c, int nodes_per_panel, const std::optional<Focus>& focus = std::nullopt);

struct IntegrationResult {
    cplx value;
    double error;
    int nodes_per_panel;
};

IntegrationResult integrate(const std::function<cplx(cplx)>& f, const Contour& c, const QuadratureSpec& spec = {},
                            const std::optional<Focus>& focus = std::nullopt);

IntegrationResult integrate2(const std::function<cplx(cplx, cplx)>& f, const Contour& cz, const Contour& cw,
                             const QuadratureSpec& spec = {}, const std::optional<Focus>& focus_z = std::nullopt,
                             const std::optional<Focus>& focus_w = std::nullopt);

}  // namespace hslpp::contour
