#include "hslpp/contour/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hslpp/core/errors.hpp"

namespace hslpp::contour {

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw ParameterError("Gauss-Legendre order must be positive");
    std::vector<std::pair<double, double>> rule(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute the derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = {-x, w};
        rule[n - 1 - i] = {x, w};
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

void split(const Segment& s, double u0, double u1, const Focus& f, int depth, std::vector<std::pair<double, double>>& out) {
    const double len = s.length() * (u1 - u0);
    const double dist = s.sub(u0, u1).distance(f.point);
    if (depth < 48 && len > f.scale && len > f.grading * dist) {
        const double um = 0.5 * (u0 + u1);
        split(s, u0, um, f, depth + 1, out);
        split(s, um, u1, f, depth + 1, out);
        return;
    }
    out.push_back({u0, u1});
}

}  // namespace

std::vector<Node> discretize(const Contour& c, int n, const std::optional<Focus>& focus) {
    if (n < 4) throw ParameterError("at least 4 nodes per segment are required");
    std::vector<Node> nodes;
    if (c.full_circle() && !focus) {
        const Arc& a = c.segments()[0].arc();
        const double dphi = (a.phi1 - a.phi0) / n;
        nodes.reserve(n);
        for (int k = 0; k < n; ++k) {
            const cplx e = std::polar(1.0, a.phi0 + k * dphi);
            nodes.push_back({a.center + a.radius * e, dphi * cplx(0.0, a.radius) * e});
        }
        return nodes;
    }
    const auto& rule = gauss_legendre(n);
    for (const auto& s : c.segments()) {
        if (s.length() == 0.0) continue;
        std::vector<std::pair<double, double>> panels;
        if (focus)
            split(s, 0.0, 1.0, *focus, 0, panels);
        else
            panels.push_back({0.0, 1.0});
        for (auto [u0, u1] : panels) {
            const double half = 0.5 * (u1 - u0);
            for (auto [x, w] : rule) {
                const double u = u0 + half * (x + 1.0);
                nodes.push_back({s.point(u), w * half * s.derivative(u)});
            }
        }
    }
    return nodes;
}

namespace {

bool converged(double err, cplx value, double l1, const QuadratureSpec& spec) {
    return err <= std::max({spec.tol * std::abs(value), 1e-14 * l1, spec.abs_tol});
}

}  // namespace

IntegrationResult integrate(const std::function<cplx(cplx)>& f, const Contour& c, const QuadratureSpec& spec,
                            const std::optional<Focus>& focus) {
    auto eval = [&](int n, double& l1) {
        cplx sum = 0.0;
        l1 = 0.0;
        for (const auto& nd : discretize(c, n, focus)) {
            const cplx term = f(nd.z) * nd.w;
            sum += term;
            l1 += std::abs(term);
        }
        return sum;
    };
    int n = spec.nodes_per_segment;
    double l1 = 0.0;
    cplx prev = eval(n, l1);
    while (true) {
        n *= 2;
        const cplx cur = eval(n, l1);
        const double err = std::abs(cur - prev);
        if (converged(err, cur, l1, spec)) return {cur, err, n};
        if (2 * n > spec.max_nodes) throw ConvergenceError("contour integral did not converge within the node cap", prev, cur);
        prev = cur;
    }
}

IntegrationResult integrate2(const std::function<cplx(cplx, cplx)>& f, const Contour& cz, const Contour& cw,
                             const QuadratureSpec& spec, const std::optional<Focus>& fz, const std::optional<Focus>& fw) {
    auto eval = [&](int n, double& l1) {
        const auto nz = discretize(cz, n, fz);
        const auto nw = discretize(cw, n, fw);
        cplx sum = 0.0;
        l1 = 0.0;
        for (const auto& a : nz) {
            cplx inner = 0.0;
            for (const auto& b : nw) {
                const cplx term = f(a.z, b.z) * b.w;
                inner += term;
                l1 += std::abs(term * a.w);
            }
            sum += inner * a.w;
        }
        return sum;
    };
    int n = spec.nodes_per_segment;
    double l1 = 0.0;
    cplx prev = eval(n, l1);
    while (true) {
        n *= 2;
        const cplx cur = eval(n, l1);
        const double err = std::abs(cur - prev);
        if (converged(err, cur, l1, spec)) return {cur, err, n};
        if (2 * n > spec.max_nodes)
            throw ConvergenceError("double contour integral did not converge within the node cap", prev, cur);
        prev = cur;
    }
}

}  // namespace hslpp::contour
