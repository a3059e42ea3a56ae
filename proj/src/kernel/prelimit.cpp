#include "hslpp/kernel/prelimit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hslpp/core/errors.hpp"
#include "hslpp/kernel/sg.hpp"

namespace hslpp::kernel {

namespace {

using contour::Contour;
using contour::Node;

// Exponent sign * (N Sbar + T Gbar - scale * xx * log(z / z_c)) for one integration variable.
struct Side {
    double sign;
    long T;
    double xx;
};

// Uniformly split pieces, for modulus bounds over the discarded arcs.
std::vector<Node> coarse_nodes(const Contour& c, int pieces, int n) {
    std::vector<Node> out;
    const auto& rule = contour::gauss_legendre(n);
    for (const auto& s : c.segments()) {
        if (s.length() == 0.0) continue;
        for (int k = 0; k < pieces; ++k) {
            const double u0 = static_cast<double>(k) / pieces, half = 0.5 / pieces;
            for (auto [x, w] : rule) {
                const double u = u0 + half * (x + 1.0);
                out.push_back({s.point(u), w * half * s.derivative(u)});
            }
        }
    }
    return out;
}

constexpr int kCoarsePieces = 48;
constexpr int kCoarseOrder = 8;

}  // namespace

PrelimitKernel::PrelimitKernel(PrelimitConfig cfg) : cfg_(std::move(cfg)) {
    const auto& k = cfg_.constants;
    if (cfg_.N < 1) throw ParameterError("N must be positive");
    pc_ = contour::prelimit_contours(k, cfg_.N, cfg_.regime, cfg_.c, cfg_.spikes, cfg_.varpi, cfg_.big);
    const double n13 = std::cbrt(static_cast<double>(cfg_.N));
    scale_ = k.sigma * k.z_c * n13;
    frac_ = k.kappa * cfg_.N - std::floor(k.kappa * cfg_.N);
    // Resolve the closest approach among Gamma_N, gamma_N, c and the spike poles.
    const double zc = k.z_c;
    const double zx = zc + pc_.r1, wx = zc + pc_.r2;
    double gap = std::min({std::abs(zx - wx), std::abs(wx - pc_.c), 1.0 / n13});
    for (double a : cfg_.spikes) gap = std::min(gap, std::abs(contour::spike_pole(k, cfg_.N, a) - zx));
    focus_scale_ = 0.25 * gap;
}

long PrelimitKernel::time_shift(double s) const {
    return time_shift_floor(s, cfg_.N);
}

std::vector<double> PrelimitKernel::spike_a() const {
    std::vector<double> a;
    for (double al : cfg_.spikes) a.push_back(1.0 / contour::spike_pole(cfg_.constants, cfg_.N, al));
    return a;
}

PrelimitValue PrelimitKernel::part(PrelimitPart which, double s, double x, double t, double y) const {
    if (which == PrelimitPart::R12) return r12(s, x, t, y);
    return double_integral(which, s, x, t, y);
}

PrelimitValue PrelimitKernel::entry(Component comp, double s, double x, double t, double y) const {
    const bool crit = cfg_.regime == Regime::Critical;
    const double n23 = n_two_thirds(cfg_.N);
    auto k12 = [&](double s1, double x1, double t1, double y1) {
        auto a = part(PrelimitPart::I12, s1, x1, t1, y1);
        auto b = part(PrelimitPart::R12, s1, x1, t1, y1);
        return PrelimitValue{a.value + b.value, a.quad_error + b.quad_error, a.tail_bound + b.tail_bound};
    };
    switch (comp) {
        case Component::K11: {
            auto v = part(PrelimitPart::I11, s, x, t, y);
            if (crit) v = {v.value * n23, v.quad_error * n23, v.tail_bound * n23};
            return v;
        }
        case Component::K12: return k12(s, x, t, y);
        case Component::K21: {
            auto v = k12(t, y, s, x);
            v.value = -v.value;
            return v;
        }
        default: {
            auto v = part(PrelimitPart::I22, s, x, t, y);
            if (crit) v = {v.value / n23, v.quad_error / n23, v.tail_bound / n23};
            return v;
        }
    }
}

PrelimitValue PrelimitKernel::double_integral(PrelimitPart which, double s, double x, double t, double y) const {
    const auto& k = cfg_.constants;
    const SGFunctions sg(k);
    const SpikeFactor W(k.q, spike_a());
    const double N = cfg_.N, q = k.q, c = pc_.c, zc = k.z_c, fr = frac_, sc = scale_;
    const long Ts = time_shift(s), Tt = time_shift(t);

    const bool i11 = which == PrelimitPart::I11, i12 = which == PrelimitPart::I12;
    const Side sz{which == PrelimitPart::I22 ? -1.0 : 1.0, Ts, x};
    const Side sw{i11 ? 1.0 : -1.0, Tt, y};
    const Contour& cz_local = which == PrelimitPart::I22 ? pc_.gamma_local : pc_.Gamma_local;
    const Contour& cw_local = i11 ? pc_.Gamma_local : pc_.gamma_local;
    const Contour& cz_drop = which == PrelimitPart::I22 ? pc_.gamma_drop : pc_.Gamma_drop;
    const Contour& cw_drop = i11 ? pc_.Gamma_drop : pc_.gamma_drop;

    // Non-exponential factor of each variable; `first` selects the z slot.
    auto rational = [&](cplx z, bool first) -> cplx {
        const cplx pw = std::pow(1.0 - q * z, fr);
        if (i11) return (1.0 - c / z) * pw * W.W(z) / (z * z - 1.0);
        if (i12) return first ? (z - c) * pw * W.W(z) / (z * (z * z - 1.0)) : 1.0 / ((z - c) * pw * W.W(z));
        return 1.0 / ((z - c) * pw * W.W(z));
    };
    auto rational_abs = [&](cplx z, bool first) -> double {
        const double pw = std::pow(std::abs(1.0 - q * z), fr);
        const double wm = std::exp(W.log_abs_W(z));
        if (i11) return std::abs(1.0 - c / z) * pw * wm / std::abs(z * z - 1.0);
        if (i12)
            return first ? std::abs(z - c) * pw * wm / std::abs(z * (z * z - 1.0)) : 1.0 / (std::abs(z - c) * pw * wm);
        return 1.0 / (std::abs(z - c) * pw * wm);
    };
    auto value = [&](cplx z, const Side& sd, bool first) -> cplx {
        if (!(z.real() > 0.0)) throw NumericalError("branch safety: integrand evaluated off the right half-plane");
        const cplx e = sd.sign * (N * sg.Sbar(z) + static_cast<double>(sd.T) * sg.Gbar(z) - sc * sd.xx * std::log(z / zc));
        return std::exp(e) * rational(z, first);
    };
    auto modulus = [&](cplx z, const Side& sd, bool first) -> double {
        const double e =
            sd.sign * (N * sg.re_Sbar(z) + static_cast<double>(sd.T) * sg.re_Gbar(z) - sc * sd.xx * std::log(std::abs(z) / zc));
        return std::exp(e) * rational_abs(z, first);
    };
    auto coupling = [&](cplx z, cplx w) -> cplx { return i12 ? (z * w - 1.0) / (z - w) : (z - w) / (z * w - 1.0); };
    const double pref = sc / (4.0 * std::numbers::pi * std::numbers::pi);

    const contour::Focus focus{cplx(zc, 0.0), focus_scale_, 0.5};
    auto eval = [&](int n, double& l1) -> cplx {
        const auto nz = contour::discretize(cz_local, n, focus);
        const auto nw = contour::discretize(cw_local, n, focus);
        std::vector<cplx> fz(nz.size()), fw(nw.size());
        for (std::size_t i = 0; i < nz.size(); ++i) fz[i] = value(nz[i].z, sz, true) * nz[i].w;
        for (std::size_t j = 0; j < nw.size(); ++j) fw[j] = value(nw[j].z, sw, false) * nw[j].w;
        cplx sum = 0.0;
        l1 = 0.0;
        for (std::size_t i = 0; i < nz.size(); ++i) {
            if (fz[i] == 0.0) continue;
            cplx inner = 0.0;
            double inner_abs = 0.0;
            for (std::size_t j = 0; j < nw.size(); ++j) {
                const cplx term = coupling(nz[i].z, nw[j].z) * fw[j];
                inner += term;
                inner_abs += std::abs(term);
            }
            sum += inner * fz[i];
            l1 += inner_abs * std::abs(fz[i]);
        }
        l1 *= pref;
        return -pref * sum;
    };

    const auto& spec = cfg_.quad;
    int n = spec.nodes_per_segment;
    double l1 = 0.0;
    cplx prev = eval(n, l1), cur;
    double err = 0.0;
    while (true) {
        n *= 2;
        cur = eval(n, l1);
        err = std::abs(cur - prev);
        if (err <= std::max({spec.tol * std::abs(cur), 1e-14 * l1, spec.abs_tol})) break;
        if (2 * n > spec.max_nodes) throw ConvergenceError("pre-limit double integral did not converge", prev, cur);
        prev = cur;
    }

    // Discarded pieces: (z on dropped arc, w anywhere) + (z kept, w on dropped arc).
    const auto dz = coarse_nodes(cz_drop, kCoarsePieces, kCoarseOrder);
    const auto dw = coarse_nodes(cw_drop, kCoarsePieces, kCoarseOrder);
    const auto kz = contour::discretize(cz_local, spec.nodes_per_segment, focus);
    auto kw = contour::discretize(cw_local, spec.nodes_per_segment, focus);
    auto all_w = kw;
    all_w.insert(all_w.end(), dw.begin(), dw.end());
    auto block = [&](const std::vector<Node>& zs, const std::vector<Node>& ws) {
        std::vector<double> mw(ws.size());
        for (std::size_t j = 0; j < ws.size(); ++j) mw[j] = modulus(ws[j].z, sw, false) * std::abs(ws[j].w);
        double total = 0.0;
        for (const auto& a : zs) {
            const double ma = modulus(a.z, sz, true) * std::abs(a.w);
            if (ma == 0.0) continue;
            double inner = 0.0;
            for (std::size_t j = 0; j < ws.size(); ++j) inner += std::abs(coupling(a.z, ws[j].z)) * mw[j];
            total += ma * inner;
        }
        return total;
    };
    const double tail = pref * (block(dz, all_w) + block(kz, dw));
    if (tail > cfg_.tail_tol)
        throw TruncationError("discarded contour pieces exceed the tail tolerance (" + std::to_string(tail) + ")", tail);
    return {cur, err, tail};
}

PrelimitValue PrelimitKernel::r12(double s, double x, double t, double y) const {
    if (!(s > t)) return {0.0, 0.0, 0.0};
    const auto& k = cfg_.constants;
    const SGFunctions sg(k);
    const double dT = static_cast<double>(time_shift(s) - time_shift(t));
    const double a = scale_ * (y - x), zc = k.z_c;
    auto f = [&](cplx z) -> cplx {
        if (!(z.real() > 0.0)) throw NumericalError("branch safety: integrand evaluated off the right half-plane");
        return std::exp(dT * sg.Gbar(z) + a * std::log(z / zc)) / z;
    };
    const double gap = std::max(1.0 / std::cbrt(static_cast<double>(cfg_.N)), 1e-3) * 0.25;
    const auto res = contour::integrate(f, pc_.gamma_tilde_local, cfg_.quad, contour::Focus{cplx(zc, 0.0), gap, 0.5});
    const cplx pref = -scale_ / (2.0 * std::numbers::pi * cplx(0.0, 1.0));
    double tail = 0.0;
    for (const auto& nd : coarse_nodes(pc_.gamma_tilde_drop, kCoarsePieces, kCoarseOrder))
        tail += std::exp(dT * sg.re_Gbar(nd.z) + a * std::log(std::abs(nd.z) / zc)) / std::abs(nd.z) * std::abs(nd.w);
    tail *= scale_ / (2.0 * std::numbers::pi);
    if (tail > cfg_.tail_tol)
        throw TruncationError("discarded R12 contour piece exceeds the tail tolerance (" + std::to_string(tail) + ")", tail);
    return {pref * res.value, std::abs(pref) * res.error, tail};
}

}  // namespace hslpp::kernel
