#include "hslpp/kernel/descent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hslpp/contour/contour.hpp"
#include "hslpp/kernel/sg.hpp"

namespace hslpp::kernel {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    os.precision(6);
    bool first = true;
    for (auto [k, v] : kv) {
        os << (first ? "" : ";") << k << "=" << v;
        first = false;
    }
    return os.str();
}

double taylor_C0(const ScalingConstants& k, double delta0) {
    const SGFunctions sg(k);
    const double s3 = k.sigma * k.sigma * k.sigma / 3.0, g2 = k.f * k.sigma * k.sigma;
    double c0 = 0.0;
    const int n = 720;
    for (int i = 0; i < n; ++i) {
        const cplx d = std::polar(delta0, 2.0 * kPi * (i + 0.5) / n);
        const cplx z = k.z_c + d;
        c0 = std::max(c0, std::abs(sg.Sbar(z) - s3 * d * d * d) / std::pow(delta0, 4));
        c0 = std::max(c0, std::abs(sg.Gbar(z) - g2 * d * d) / std::pow(delta0, 3));
    }
    // sampling misses the peak by at most a relative O((2 pi / n)^2)
    return c0 * 1.001;
}

}  // namespace

bool DescentReport::all_pass() const { return failures() == 0; }

std::size_t DescentReport::failures() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.pass; }));
}

double circle_derivative_S(const ScalingConstants& k, double R, double theta) {
    const double q = k.q, c = std::cos(theta);
    const double A = R * R - 2.0 * c * R * q + q * q;
    const double B = R * R * q * q + 1.0 - 2.0 * c * R * q;
    return R * q * std::sin(theta) * (B - k.kappa * A) / (A * B);
}

double circle_derivative_G(const ScalingConstants& k, double R, double theta) {
    const double q = k.q;
    return -R * q * std::sin(theta) / (R * R * q * q + 1.0 - 2.0 * R * q * std::cos(theta));
}

DescentConstants descent_constants(const ScalingConstants& k, double theta) {
    DescentConstants d{};
    d.delta0 = 0.5 * std::min({1.0, k.z_c - 1.0, 1.0 / k.q - k.z_c});
    d.C0 = taylor_C0(k, d.delta0);
    const double s3 = k.sigma * k.sigma * k.sigma;
    d.eps1_min = -s3 * std::cos(3.0 * theta) / 6.0;
    d.delta1_min = std::min(d.delta0, d.eps1_min / d.C0);
    d.eps2 = 0.5 * std::min(s3 / 3.0, k.f * k.sigma * k.sigma);
    d.delta2 = std::min(d.delta0, d.eps2 / d.C0);
    return d;
}

DescentReport verify_descent(const DescentGrids& g) {
    DescentReport rep;
    for (auto [q, kappa] : g.q_kappa) {
        const auto k = scaling_constants(q, kappa);
        const SGFunctions sg(k);
        const double zc = k.z_c, s3 = std::pow(k.sigma, 3), g2 = k.f * k.sigma * k.sigma;
        auto add = [&](const std::string& check, const std::string& pt, double lhs, double rhs, bool le) {
            const bool pass = le ? lhs <= rhs + g.slack : lhs >= rhs - g.slack;
            rep.entries.push_back({q, kappa, check, pt, lhs, rhs, pass});
        };

        const auto base = descent_constants(k, g.theta.empty() ? 5.0 * kPi / 12.0 : g.theta.front());
        rep.constants.push_back({{q, kappa}, base});
        const int nr = std::max(2, g.radial_points);

        // Taylor bounds inside the disc of radius delta0.
        for (int i = 0; i < nr; ++i) {
            const double r = base.delta0 * i / (nr - 1);
            for (double phi : {0.0, kPi / 3.0, 2.0 * kPi / 3.0, kPi, 1.5 * kPi}) {
                const cplx d = std::polar(r, phi);
                const cplx z = zc + d;
                add("TaylorS", fmt({{"r", r}, {"phi", phi}}), std::abs(sg.Sbar(z) - s3 / 3.0 * d * d * d),
                    base.C0 * std::pow(r, 4), true);
                add("TaylorG", fmt({{"r", r}, {"phi", phi}}), std::abs(sg.Gbar(z) - g2 * d * d), base.C0 * std::pow(r, 3),
                    true);
            }
        }

        for (double th : g.theta) {
            const auto dc = descent_constants(k, th);
            for (int i = 0; i < nr; ++i) {
                const double r = dc.delta1_min * i / (nr - 1);
                for (double sgn : {1.0, -1.0}) {
                    const cplx z = zc + std::polar(r, sgn * th);
                    add("CritDecayS1", fmt({{"theta", th}, {"r", r}, {"sign", sgn}}), sg.re_Sbar(z),
                        -dc.eps1_min * r * r * r, true);
                }
            }
        }
        for (int i = 0; i < nr; ++i) {
            const double r = base.delta2 * i / (nr - 1);
            for (double sgn : {1.0, -1.0}) {
                const cplx zg = zc + std::polar(r, sgn * 2.0 * kPi / 3.0);
                add("CritGrowS1", fmt({{"r", r}, {"sign", sgn}}), sg.re_Sbar(zg), base.eps2 * r * r * r, false);
                const cplx zh = zc + std::polar(r, sgn * kPi / 2.0);
                add("CritDecayG1", fmt({{"r", r}, {"sign", sgn}}), sg.re_Gbar(zh), -base.eps2 * r * r, true);
            }
        }

        // Circle monotonicity; the closed form is cross-checked against a central difference.
        const int nR = std::max(1, g.circle_radii), nt = std::max(2, g.circle_angles);
        for (int i = 1; i <= nR; ++i) {
            const double Rs = zc * i / nR;
            const double Rg = 3.0 / q * i / nR;
            for (int j = 0; j < nt; ++j) {
                const double th = 0.01 + (kPi - 0.02) * j / (nt - 1);
                const double dS = circle_derivative_S(k, Rs, th);
                const double hstep = 1e-5;
                const double fd = (sg.re_Sbar(std::polar(Rs, th + hstep)) - sg.re_Sbar(std::polar(Rs, th - hstep))) / (2 * hstep);
                add("SmallCircleS", fmt({{"R", Rs}, {"theta", th}}), dS, 0.0, false);
                rep.entries.back().pass = rep.entries.back().pass && dS > 0.0 &&
                                          std::abs(fd - dS) <= 1e-6 * std::max(1.0, std::abs(dS));
                const double dG = circle_derivative_G(k, Rg, th);
                const double fdg = (sg.re_Gbar(std::polar(Rg, th + hstep)) - sg.re_Gbar(std::polar(Rg, th - hstep))) / (2 * hstep);
                add("MedCircleG", fmt({{"R", Rg}, {"theta", th}}), dG, 0.0, true);
                rep.entries.back().pass = rep.entries.back().pass && dG < 0.0 &&
                                          std::abs(fdg - dG) <= 1e-6 * std::max(1.0, std::abs(dG));
            }
        }

        // Decay on the big contour C(z_c, theta0, R0, 0) away from z_c.
        const double R0 = g.big.R0 > 0.0 ? g.big.R0 : 1.0 / q + 0.5;
        const auto big = contour::keyhole(zc, g.big.theta0, R0, 0.0);
        const double L = big.length();
        std::vector<std::pair<double, double>> samples;  // (|z - z_c|, Re Sbar)
        for (const auto& seg : big.segments()) {
            if (seg.length() == 0.0) continue;
            const int n = std::max(8, static_cast<int>(g.big_samples * seg.length() / L));
            for (int i = 0; i <= n; ++i) {
                const cplx z = seg.point(static_cast<double>(i) / n);
                samples.push_back({std::abs(z - zc), sg.re_Sbar(z)});
            }
        }
        for (double eps : g.big_eps) {
            double worst = -1e300;
            for (auto [d, v] : samples)
                if (d >= eps) worst = std::max(worst, v);
            // psi-hat(eps) = -worst must be positive
            add("BigContour", fmt({{"theta0", g.big.theta0}, {"R0", R0}, {"eps", eps}}), worst, 0.0, true);
            rep.entries.back().pass = worst < 0.0;
        }
    }
    return rep;
}

}  // namespace hslpp::kernel
