#include "hslpp/kernel/kgeo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hslpp/core/errors.hpp"
#include "hslpp/kernel/sg.hpp"

namespace hslpp::kernel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_spike(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, v);
    return m;
}

void check_window(double r, double lo, double hi, const char* name) {
    if (!(r > lo && r < hi))
        throw ParameterError(std::string("radius ") + name + " = " + std::to_string(r) + " outside (" +
                             std::to_string(lo) + ", " + std::to_string(hi) + ")");
}

// log of the circle mass  int |exp f(z)| |dz|  on |z| = r, coarse trapezoid.
template <class F>
double log_mass(const F& f, double r) {
    constexpr int n = 96;
    std::vector<double> v(n);
    double m = -kInf;
    for (int i = 0; i < n; ++i) {
        const cplx z = std::polar(r, 2.0 * M_PI * (i + 0.5) / n);
        v[i] = f(z).real();
        m = std::max(m, v[i]);
    }
    double s = 0.0;
    for (double t : v) s += std::exp(t - m);
    return m + std::log(s * 2.0 * M_PI * r / n);
}

// Golden section in log r; the circle mass of an analytic function is log-convex in log r.
template <class G>
double golden(const G& obj, double lo, double hi) {
    double a = std::log(lo), b = std::log(hi);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = obj(std::exp(x1)), f2 = obj(std::exp(x2));
    for (int it = 0; it < 40 && b - a > 1e-4; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - g * (b - a); f1 = obj(std::exp(x1));
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + g * (b - a); f2 = obj(std::exp(x2));
        }
    }
    return std::exp(0.5 * (a + b));
}

// Window edges are poles; staying a tenth of the (log) width away keeps the trapezoid rule fast.
std::pair<double, double> search_range(double lo, double hi) {
    if (!std::isfinite(hi)) hi = std::max(4.0 * lo, lo + 4.0);
    const double pad = 0.1 * std::log(hi / lo);
    return {lo * std::exp(pad), hi * std::exp(-pad)};
}

// Radii minimising the L1 mass of the integrand, which bounds the rounding floor of the sum.
template <class FZ, class FW>
KgeoRadii tuned_radii(Component comp, bool u_le_v, const KgeoWindows& w, const FZ& fz, const FW& fw) {
    KgeoRadii r;
    if (comp == Component::K11 || comp == Component::K22) {
        const auto [lo, hi] = comp == Component::K11 ? search_range(w.r1_lo, w.r1_hi) : search_range(w.r2_lo, w.r2_hi);
        const double best = golden([&](double t) { return log_mass(fz, t) + log_mass(fw, t); }, lo, hi);
        (comp == Component::K11 ? r.r1 : r.r2) = best;
        return r;
    }
    const auto [zlo, zhi] = search_range(w.r12z_lo, w.r12z_hi);
    const auto [wlo, whi] = search_range(w.r12w_lo, w.r12w_hi);
    const double rz = golden([&](double t) { return log_mass(fz, t); }, zlo, zhi);
    const double rw = golden([&](double t) { return log_mass(fw, t); }, wlo, whi);
    constexpr double gap = 0.02;
    if (u_le_v ? rz > rw * (1.0 + gap) : rw > rz * (1.0 + gap)) {
        r.r12z = rz;
        r.r12w = rw;
        return r;
    }
    // Ordering violated: slide a nested pair with fixed relative gap; the coupling adds -log(gap).
    const double inner_lo = u_le_v ? wlo : zlo, inner_hi = u_le_v ? whi : zhi;
    const double outer_lo = u_le_v ? zlo : wlo, outer_hi = u_le_v ? zhi : whi;
    const double mlo = std::max(inner_lo, outer_lo / (1.0 + gap));
    const double mhi = std::min(inner_hi, outer_hi / (1.0 + gap));
    if (!(mhi > mlo)) return r;  // caller falls back to the defaults
    const double m = golden(
        [&](double t) {
            const double o = t * (1.0 + gap);
            return u_le_v ? log_mass(fz, o) + log_mass(fw, t) : log_mass(fz, t) + log_mass(fw, o);
        },
        mlo, mhi);
    r.r12z = u_le_v ? m * (1.0 + gap) : m;
    r.r12w = u_le_v ? m : m * (1.0 + gap);
    return r;
}

}  // namespace

KgeoWindows KgeoContext::windows() const {
    const double amax = max_spike(spikes);
    const double outer = std::min(1.0 / q, amax > 0.0 ? 1.0 / amax : kInf);
    const double inner = std::max({c, q, amax});
    const double w_hi = spikes.empty() ? kInf : 1.0 / q;
    return {1.0, outer, 1.0, outer, inner, w_hi, std::max(inner, 1.0), w_hi};
}

KgeoRadii KgeoContext::default_radii(bool u_le_v) const {
    const auto w = windows();
    KgeoRadii r;
    r.r1 = 0.5 * (w.r1_lo + w.r1_hi);
    if (u_le_v) {
        const double lo = std::max(w.r12z_lo, w.r12w_lo);
        r.r12z = lo + (w.r12z_hi - lo) * 2.0 / 3.0;
        r.r12w = 0.5 * (w.r12w_lo + r.r12z);
    } else {
        r.r12z = w.r12z_lo + (w.r12z_hi - w.r12z_lo) / 3.0;
        const double lo = std::max(w.r12w_lo, r.r12z);
        const double hi = std::isfinite(w.r12w_hi) ? w.r12w_hi : lo + 1.0;
        r.r12w = 0.5 * (lo + hi);
    }
    const double hi2 = std::isfinite(w.r2_hi) ? w.r2_hi : w.r2_lo + 1.0;
    r.r2 = 0.5 * (w.r2_lo + hi2);
    return r;
}

void KgeoContext::validate() const {
    if (N < 1) throw ParameterError("N must be >= 1");
    if (N > kMaxN) throw GuardError("kgeo is limited to N <= " + std::to_string(kMaxN) + " (magnitude guard)");
    if (!(q > 0.0 && q < 1.0)) throw ParameterError("q must lie in (0,1)");
    if (!(c >= 0.0 && c * q < 1.0)) throw ParameterError("c must satisfy 0 <= c < 1/q");
    if (M.empty()) throw ParameterError("at least one time label is required");
    for (std::size_t i = 0; i < M.size(); ++i) {
        if (M[i] < 1 || M[i] > N) throw ParameterError("time label outside [1, N]");
        if (i > 0 && M[i] <= M[i - 1]) throw ParameterError("time labels must be strictly increasing");
    }
    const auto w = windows();
    if (!(w.r1_hi > w.r1_lo) || !(w.r12z_hi > std::max(w.r12z_lo, 0.0)) || !(w.r12w_hi > w.r12w_lo))
        throw ParameterError("empty radius window for the given parameters");
}

KgeoValue kgeo(Component comp, int u, long x, int v, long y, const KgeoContext& ctx, const std::optional<KgeoRadii>& radii) {
    if (comp == Component::K21) {
        auto r = kgeo(Component::K12, v, y, u, x, ctx, radii);
        return {-r.value, r.error};
    }
    ctx.validate();
    if (u < 1 || v < 1 || u > static_cast<int>(ctx.M.size()) || v > static_cast<int>(ctx.M.size()))
        throw RangeError("time label index outside the configured labels");
    const bool u_le_v = u <= v;
    const auto win = ctx.windows();
    const SpikeFactor W(ctx.q, ctx.spikes);
    const double N = ctx.N, q = ctx.q, c = ctx.c;
    const double Mu = ctx.M[u - 1], Mv = ctx.M[v - 1];

    // Per-node log factors; products are formed as exp(log a + log b) relative to the maxima.
    auto log_z_factor = [&](cplx z) -> cplx {
        const cplx lz = std::log(z), lq = std::log(1.0 - q / z), lqz = std::log(1.0 - q * z);
        switch (comp) {
            case Component::K11:
                return -static_cast<double>(x) * lz + N * lq - Mu * lqz + std::log(1.0 - c / z) - std::log(z * z - 1.0) +
                       W.log_W(z);
            case Component::K12:
                return -static_cast<double>(x) * lz + N * lq - Mu * lqz + std::log(z - c) - lz - std::log(z * z - 1.0) +
                       W.log_W(z);
            default:
                return static_cast<double>(x) * lz - N * lq + Mu * lqz - std::log(z - c) - W.log_W(z);
        }
    };
    auto log_w_factor = [&](cplx w) -> cplx {
        const cplx lw = std::log(w), lq = std::log(1.0 - q / w), lqw = std::log(1.0 - q * w);
        switch (comp) {
            case Component::K11:
                return -static_cast<double>(y) * lw + N * lq - Mv * lqw + std::log(1.0 - c / w) - std::log(w * w - 1.0) +
                       W.log_W(w);
            case Component::K12:
                return static_cast<double>(y) * lw - N * lq + Mv * lqw - std::log(w - c) - W.log_W(w);
            default:
                return static_cast<double>(y) * lw - N * lq + Mv * lqw - std::log(w - c) - W.log_W(w);
        }
    };
    auto coupling = [&](cplx z, cplx w) -> cplx {
        switch (comp) {
            case Component::K11: return (z - w) / (z * w - 1.0);
            case Component::K12: return (z * w - 1.0) / (z - w);
            default: return (z - w) / (z * w - 1.0);
        }
    };

    KgeoRadii rad = radii ? *radii : tuned_radii(comp, u_le_v, win, log_z_factor, log_w_factor);
    if (!radii && comp == Component::K12 && rad.r12z == 0.0) rad = ctx.default_radii(u_le_v);
    if (comp == Component::K11) check_window(rad.r1, win.r1_lo, win.r1_hi, "r1");
    if (comp == Component::K22) check_window(rad.r2, win.r2_lo, win.r2_hi, "r2");
    if (comp == Component::K12) {
        check_window(rad.r12z, win.r12z_lo, win.r12z_hi, "r12z");
        check_window(rad.r12w, win.r12w_lo, win.r12w_hi, "r12w");
        if (u_le_v && !(rad.r12w < rad.r12z)) throw ParameterError("K12 needs r12w < r12z when u <= v");
        if (!u_le_v && !(rad.r12z < rad.r12w)) throw ParameterError("K12 needs r12z < r12w when u > v");
    }
    auto integrate = [&](const KgeoRadii& rad) -> KgeoValue {
        double rz = 0, rw = 0;
        switch (comp) {
            case Component::K11: rz = rw = rad.r1; break;
            case Component::K12: rz = rad.r12z; rw = rad.r12w; break;
            default: rz = rw = rad.r2; break;
        }

        const auto& spec = ctx.quad;
        auto eval = [&](int n, double& l1) -> cplx {
            const auto nz = contour::discretize(contour::circle(rz), n);
            const auto nw = contour::discretize(contour::circle(rw), n);
            std::vector<cplx> fz(n), fw(n);
            double mz = -kInf, mw = -kInf;
            for (int i = 0; i < n; ++i) {
                const cplx a = log_z_factor(nz[i].z), b = log_w_factor(nw[i].z);
                fz[i] = a;
                fw[i] = b;
                mz = std::max(mz, a.real());
                mw = std::max(mw, b.real());
            }
            for (int i = 0; i < n; ++i) {
                fz[i] = std::exp(fz[i] - mz) * nz[i].w;
                fw[i] = std::exp(fw[i] - mw) * nw[i].w;
            }
            cplx sum = 0.0;
            l1 = 0.0;
            for (int i = 0; i < n; ++i) {
                cplx inner = 0.0;
                for (int j = 0; j < n; ++j) {
                    const cplx t = coupling(nz[i].z, nw[j].z) * fw[j];
                    inner += t;
                    l1 += std::abs(t * fz[i]);
                }
                sum += inner * fz[i];
            }
            const double scale = std::exp(mz + mw) / (4.0 * M_PI * M_PI);
            l1 *= scale;
            return -sum * scale;  // 1/(2 pi i)^2 = -1/(4 pi^2)
        };

        int n = spec.nodes_per_segment;
        double l1 = 0.0;
        cplx prev = eval(n, l1);
        while (true) {
            n *= 2;
            const cplx cur = eval(n, l1);
            // Rounding floor of the oscillating sum; beyond moderate N it swamps the value.
            const double floor_err = 4e-16 * l1;
            if (floor_err > std::max(1e-4 * std::abs(cur), 1e-6))
            {
                char buf[160];
                std::snprintf(buf, sizeof buf, "kgeo cancellation: rounding floor %.3g against value %.3g at x=%ld, y=%ld",
                              floor_err, std::abs(cur), x, y);
                throw NumericalError(buf);
            }
            const double err = std::abs(cur - prev);
            if (err <= std::max({spec.tol * std::abs(cur), 1e-15 * l1, spec.abs_tol})) return {cur, std::max(err, floor_err)};
            if (2 * n > spec.max_nodes) throw ConvergenceError("kgeo quadrature did not converge", prev, cur);
            prev = cur;
        }
    };
    if (radii) return integrate(*radii);
    try {
        return integrate(rad);
    } catch (const ConvergenceError&) {
        // Tuning can land on a nearly flat mass profile with poor node resolution; retry on the fixed circles.
        return integrate(ctx.default_radii(u_le_v));
    }
}

}  // namespace hslpp::kernel
