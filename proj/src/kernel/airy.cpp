#include "hslpp/kernel/airy.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "hslpp/core/errors.hpp"

namespace hslpp::kernel {

namespace {

using contour::cplx;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest T with Re phi(a + T e^{i phi_dir}) below max - cut, scanning outward.
double ray_length(const std::function<double(cplx)>& re_phi, cplx a, double dir, double cut) {
    const cplx up = std::polar(1.0, dir);
    double best = re_phi(a);
    double T = 0.25;
    for (int i = 0; i < 400; ++i, T *= 1.1) {
        const double v = std::max(re_phi(a + T * up), re_phi(a + T * std::conj(up)));
        best = std::max(best, v);
        if (v < best - cut) return T;
    }
    throw NumericalError("Airy ray truncation: exponent does not decay");
}

struct Anchors {
    double Z, W;
};

Anchors choose_anchors(double t1, double x1, double t2, double x2, double lo, double hi, const AirySpec& spec) {
    if (!(hi > lo)) throw ParameterError("Airy wanderer needs min(A) > max(B)");
    double Z = std::max(1.0, std::sqrt(std::max(x1, 0.0))) + t1;
    double W = -std::max(1.0, std::sqrt(std::max(x2, 0.0))) + t2;
    if (Z <= W) {
        const double mid = 0.5 * (Z + W);
        Z = mid + 0.5;
        W = mid - 0.5;
    }
    const double m = std::min(0.5, (hi - lo) / 4.0);
    const double g = std::min(1.0, (hi - lo) / 3.0);
    Z = std::min(Z, hi - m);
    W = std::max(W, lo + m);
    if (Z - W < g) {
        W = std::max(lo + m, Z - g);
        if (Z - W < g) Z = std::min(hi - m, W + g);
        if (Z - W < g) {
            W = lo + (hi - lo) / 3.0;
            Z = lo + 2.0 * (hi - lo) / 3.0;
        }
    }
    if (spec.z_anchor) Z = *spec.z_anchor;
    if (spec.w_anchor) W = *spec.w_anchor;
    if (!(Z > W && Z < hi && W > lo)) throw ParameterError("Airy wanderer anchors violate lo < W < Z < hi");
    return {Z, W};
}

}  // namespace

double airy_gaussian_term(double t1, double x1, double t2, double x2) {
    if (!(t2 > t1)) return 0.0;
    const double d = t2 - t1;
    return -std::exp(-(x2 - x1) * (x2 - x1) / (4.0 * d) - d * (x2 + x1) / 2.0 + d * d * d / 12.0) /
           std::sqrt(4.0 * std::numbers::pi * d);
}

AiryValue airy_wanderer(double t1, double x1, double t2, double x2, const std::vector<double>& A,
                        const std::vector<double>& B, const AirySpec& spec) {
    const double hi = A.empty() ? kInf : *std::min_element(A.begin(), A.end());
    const double lo = B.empty() ? -kInf : *std::max_element(B.begin(), B.end());
    const auto anc = choose_anchors(t1, x1, t2, x2, lo, hi, spec);
    const double gamma = anc.Z - t1, beta = anc.W - t2;
    const double pi3 = std::numbers::pi / 3.0;

    auto re_phi = [&](cplx z) { return std::real(z * z * z / 3.0 - x1 * z); };
    auto re_psi = [&](cplx w) { return std::real(-w * w * w / 3.0 + x2 * w); };
    double Tz = ray_length(re_phi, gamma, pi3, spec.cut);
    double Tw = ray_length(re_psi, beta, 2.0 * pi3, spec.cut);

    auto fz = [&](cplx z) {
        cplx v = std::exp(z * z * z / 3.0 - x1 * z);
        for (double a : A) v /= (z + t1 - a);
        for (double b : B) v *= (z + t1 - b);
        return v;
    };
    auto fw = [&](cplx w) {
        cplx v = std::exp(-w * w * w / 3.0 + x2 * w);
        for (double a : A) v *= (w + t2 - a);
        for (double b : B) v /= (w + t2 - b);
        return v;
    };
    const double gap = anc.Z - anc.W;
    auto double_ray = [&](double Lz, double Lw, double& err) -> cplx {
        const auto cz = contour::ray(gamma, pi3, 0.0, Lz);
        const auto cw = contour::ray(beta, 2.0 * pi3, 0.0, Lw);
        const contour::Focus focz{gamma, 0.25 * gap, 0.5}, focw{beta, 0.25 * gap, 0.5};
        double l1 = 0.0;
        auto eval = [&](int n) {
            l1 = 0.0;
            const auto nz = contour::discretize(cz, n, focz);
            const auto nw = contour::discretize(cw, n, focw);
            std::vector<cplx> vw(nw.size());
            for (std::size_t j = 0; j < nw.size(); ++j) vw[j] = fw(nw[j].z) * nw[j].w;
            cplx sum = 0.0;
            for (const auto& a : nz) {
                const cplx za = a.z + t1 - t2;
                cplx inner = 0.0;
                double inner_abs = 0.0;
                for (std::size_t j = 0; j < nw.size(); ++j) {
                    const cplx term = vw[j] / (za - nw[j].z);
                    inner += term;
                    inner_abs += std::abs(term);
                }
                const cplx fa = fz(a.z) * a.w;
                sum += inner * fa;
                l1 += inner_abs * std::abs(fa);
            }
            l1 /= 4.0 * std::numbers::pi * std::numbers::pi;
            return -sum / (4.0 * std::numbers::pi * std::numbers::pi);
        };
        int n = spec.quad.nodes_per_segment;
        cplx prev = eval(n);
        while (true) {
            n *= 2;
            const cplx cur = eval(n);
            err = std::abs(cur - prev);
            if (err <= std::max({spec.quad.tol * std::abs(cur), spec.quad.abs_tol, 1e-14 * l1})) {
                err = std::max(err, 1e-15 * l1);
                return cur;
            }
            if (2 * n > spec.quad.max_nodes) throw ConvergenceError("Airy double integral did not converge", prev, cur);
            prev = cur;
        }
    };

    double err = 0.0;
    cplx val = double_ray(Tz, Tw, err);
    for (int i = 0;; ++i) {
        if (i >= spec.max_extensions) throw TruncationError("Airy ray truncation did not stabilise", std::abs(val));
        Tz *= 1.2;
        Tw *= 1.2;
        double e2 = 0.0;
        const cplx v2 = double_ray(Tz, Tw, e2);
        const double change = std::abs(v2 - val);
        val = v2;
        err = std::max(e2, change);
        if (change <= std::max(spec.extend_tol * std::abs(v2), 4.0 * e2)) break;
    }
    AiryValue out;
    out.value = val.real() + airy_gaussian_term(t1, x1, t2, x2);
    out.imag_residue = val.imag();
    out.error = err;
    out.z_anchor = anc.Z;
    out.w_anchor = anc.W;
    out.z_length = Tz;
    out.w_length = Tw;
    return out;
}

double extended_airy(double t1, double x1, double t2, double x2) {
    using boost::math::airy_ai;
    const double d = t1 - t2;
    // Ai(u) < 1e-60 once u > 22; the upper limit keeps both factors negligible.
    const double upper = std::max(0.0, 24.0 - std::min(x1, x2));
    auto g = [&](double l) { return std::exp(-l * d) * airy_ai(x1 + l) * airy_ai(x2 + l); };
    double err = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, upper, 20, 1e-14, &err);
    return integral + airy_gaussian_term(t1, x1, t2, x2);
}

double airy_kernel(double x, double y) {
    using boost::math::airy_ai;
    using boost::math::airy_ai_prime;
    if (std::abs(x - y) < 1e-7) {
        const double m = 0.5 * (x + y);
        const double a = airy_ai(m), ap = airy_ai_prime(m);
        // the midpoint value is accurate to O((x-y)^2)
        return ap * ap - m * a * a;
    }
    return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y);
}

AiryValue limit_rhs(double s, double x, double t, double y, const ScalingConstants& k, const std::vector<double>& spikes,
                    contour::Regime regime, double varpi, const AirySpec& spec) {
    const double f = k.f;
    std::vector<double> B;
    if (regime == contour::Regime::Critical) B.push_back(-varpi);
    auto v = airy_wanderer(-f * s, x + f * f * s * s, -f * t, y + f * f * t * t, spikes, B, spec);
    const double gauge =
        std::exp(2.0 * f * f * f * (s * s * s - t * t * t) / 3.0 + f * s * x - f * t * y);
    v.value *= gauge;
    v.imag_residue *= gauge;
    v.error *= gauge;
    return v;
}

double r_limit_quadrature(double s, double x, double t, double y, double f) {
    if (!(s > t)) return 0.0;
    const double a = f * (s - t), b = y - x;
    // u = i v: -1/(2 pi) int exp(-a v^2) cos(b v) dv over R.
    auto g = [&](double v) { return std::exp(-a * v * v) * std::cos(b * v); };
    const double L = std::sqrt(80.0 / a);
    double err = 0.0;
    const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -L, L, 20, 1e-14, &err);
    return -I / (2.0 * std::numbers::pi);
}

double r_limit_closed(double s, double x, double t, double y, double f) {
    if (!(s > t)) return 0.0;
    const double a = f * (s - t);
    return -std::exp(-(y - x) * (y - x) / (4.0 * a)) / std::sqrt(4.0 * std::numbers::pi * a);
}

}  // namespace hslpp::kernel
