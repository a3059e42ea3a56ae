#include "hslpp/contour/prelimit_contours.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hslpp/core/errors.hpp"

namespace hslpp::contour {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
    double r1, r2;  // absolute signed radii
    double c1, c2;  // coefficients reported
    std::string rule;
};

// Returns the list of violated conditions; empty means the contours are usable.
std::vector<std::string> check(const PrelimitContours& pc, const ScalingConstants& k, const std::vector<double>& poles) {
    std::vector<std::string> bad;
    auto wind = [](const Contour& c, cplx p) { return std::lround(winding_number(c, p)); };
    const double q = k.q;
    if (distance(pc.Gamma, pc.gamma) < 1e-14) bad.push_back("Gamma_N and gamma_N intersect");
    else if (wind(pc.Gamma, pc.gamma.start()) != 1) bad.push_back("Gamma_N does not encircle gamma_N");
    for (double p : {0.0, 1.0, -1.0, q})
        if (wind(pc.Gamma, p) != 1) bad.push_back("Gamma_N misses the pole at " + std::to_string(p));
    if (wind(pc.Gamma, 1.0 / q) != 0) bad.push_back("Gamma_N encircles 1/q");
    for (double p : poles)
        if (wind(pc.Gamma, p) != 0) bad.push_back("Gamma_N encircles the spike pole " + std::to_string(p));
    for (double p : {pc.c, q, 0.0})
        if (wind(pc.gamma, p) != 1) bad.push_back("gamma_N misses the pole at " + std::to_string(p));
    for (double p : poles)
        if (wind(pc.gamma, 1.0 / p) != 1) bad.push_back("gamma_N misses the spike zero " + std::to_string(1.0 / p));
    if (wind(pc.gamma, 1.0 / q) != 0) bad.push_back("gamma_N encircles 1/q");
    if (!(min_modulus(pc.gamma) > 1.0)) bad.push_back("gamma_N must stay outside the unit circle");
    if (wind(pc.gamma_tilde, 0.0) != 1 || wind(pc.gamma_tilde, 1.0 / q) != 0)
        bad.push_back("gamma~_N must encircle 0 and exclude 1/q");
    for (const Contour* c : {&pc.Gamma_local, &pc.gamma_local, &pc.gamma_tilde_local})
        if (crosses_negative_axis(*c)) bad.push_back("kept contour part meets the negative real axis");
    return bad;
}

PrelimitContours build(const ScalingConstants& k, int N, double c, const Candidate& cand, const BigContourParams& big) {
    PrelimitContours pc;
    const double n12 = std::pow(static_cast<double>(N), -1.0 / 12.0);
    const double zc = k.z_c;
    pc.theta0 = big.theta0;
    pc.R0 = big.R0 > 0.0 ? big.R0 : 1.0 / k.q + 0.5;
    pc.c = c;
    pc.r1 = cand.r1;
    pc.r2 = cand.r2;
    pc.r1_coef = cand.c1;
    pc.r2_coef = cand.c2;
    pc.rule = cand.rule;
    const double Rg = std::sqrt(zc * zc + n12 * n12 - zc * n12);
    const double Rt = std::sqrt(zc * zc + n12 * n12);
    const double tg = 2.0 * kPi / 3.0, tt = kPi / 2.0;
    pc.Gamma = keyhole(zc, pc.theta0, pc.R0, pc.r1);
    pc.Gamma_local = keyhole_inner(zc, pc.theta0, pc.R0, pc.r1);
    pc.Gamma_drop = keyhole_outer(zc, pc.theta0, pc.R0, pc.r1);
    pc.gamma = keyhole(zc, tg, Rg, pc.r2);
    pc.gamma_local = keyhole_inner(zc, tg, Rg, pc.r2);
    pc.gamma_drop = keyhole_outer(zc, tg, Rg, pc.r2);
    pc.gamma_tilde = keyhole(zc, tt, Rt, 0.0);
    pc.gamma_tilde_local = keyhole_inner(zc, tt, Rt, 0.0);
    pc.gamma_tilde_drop = keyhole_outer(zc, tt, Rt, 0.0);
    pc.Gamma_min_modulus = min_modulus(pc.Gamma);
    pc.gamma_max_modulus = max_modulus(pc.gamma);
    pc.radial_nested = pc.Gamma_min_modulus > pc.gamma_max_modulus && pc.gamma_max_modulus > c;
    return pc;
}

// Crossings in limit units (Z = sigma N^{1/3} (z - z_c)) strictly inside (lo, hi), w below z.
Candidate adjusted(double lo, double hi, double scale) {
    const double m = std::min(0.5, (hi - lo) / 3.0);
    double w = std::max(-1.0, lo + m);
    double z = std::max(0.0, w + m);
    std::string rule = "adjusted";
    if (z > hi - m) {
        w = lo + (hi - lo) / 3.0;
        z = lo + 2.0 * (hi - lo) / 3.0;
        rule = "trisection";
    }
    return {z * scale, w * scale, z, w, rule};
}

}  // namespace

double spike_pole(const ScalingConstants& k, int N, double alpha) {
    return k.z_c + alpha / (k.sigma * std::cbrt(static_cast<double>(N)));
}

PrelimitContours prelimit_contours(const ScalingConstants& k, int N, Regime regime, double c,
                                   const std::vector<double>& spike_strengths, double varpi, const BigContourParams& big) {
    if (N < 1) throw ParameterError("N must be positive");
    if (!(big.theta0 > kPi / 4.0 && big.theta0 < kPi / 2.0)) throw ParameterError("theta0 must lie in (pi/4, pi/2)");
    const double n13 = std::cbrt(static_cast<double>(N));
    const double alpha_min =
        spike_strengths.empty() ? kInf : *std::min_element(spike_strengths.begin(), spike_strengths.end());
    if (regime == Regime::Critical) {
        if (!(-varpi < alpha_min)) throw ParameterError("critical regime needs -varpi < min spike strength");
        c = k.z_c - varpi / (k.sigma * n13);
    } else if (!(c >= 0.0 && c < k.z_c)) {
        throw ParameterError("subcritical regime needs 0 <= c < z_c");
    }
    std::vector<double> poles;
    for (double a : spike_strengths) poles.push_back(spike_pole(k, N, a));

    std::vector<Candidate> candidates;
    if (regime == Regime::Subcritical) {
        const double c1 = std::min(0.0, 2.0 * alpha_min), c2 = std::min(-1.0, 3.0 * alpha_min);
        candidates.push_back({c1 / n13, c2 / n13, c1, c2, "standard"});
    } else if (std::isfinite(alpha_min)) {
        const double c1 = -2.0 * varpi / 3.0 + alpha_min / 3.0, c2 = -varpi / 3.0 + 2.0 * alpha_min / 3.0;
        candidates.push_back({c1 / n13, c2 / n13, c1, c2, "standard"});
    }
    const double lo = (c - k.z_c) * k.sigma * n13;
    candidates.push_back(adjusted(lo, alpha_min, 1.0 / (k.sigma * n13)));

    std::string failure;
    for (const auto& cand : candidates) {
        PrelimitContours pc;
        try {
            pc = build(k, N, c, cand, big);
        } catch (const ParameterError& e) {
            failure = cand.rule + ": " + e.what();
            continue;
        }
        const auto bad = check(pc, k, poles);
        if (bad.empty()) return pc;
        failure = cand.rule + ": " + bad.front();
    }
    throw ParameterError("N too small for the pre-limit contours (" + failure + ")");
}

}  // namespace hslpp::contour
