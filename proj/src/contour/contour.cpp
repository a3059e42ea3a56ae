#include "hslpp/contour/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hslpp/core/errors.hpp"
#include "json.hpp"

namespace hslpp::contour {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> sample(const Segment& s, int n) {
    std::vector<cplx> pts;
    pts.reserve(n + 1);
    for (int k = 0; k <= n; ++k) pts.push_back(s.point(static_cast<double>(k) / n));
    return pts;
}

std::vector<cplx> sample(const Contour& c, int per_segment) {
    std::vector<cplx> pts;
    for (const auto& s : c.segments()) {
        auto p = sample(s, per_segment);
        pts.insert(pts.end(), p.begin(), p.end());
    }
    return pts;
}

}  // namespace

Segment::Segment(Arc a) : arc_(true), a_(a) {
    if (!(a.radius > 0.0)) throw ParameterError("arc radius must be positive");
}

cplx Segment::point(double u) const {
    if (!arc_) return line_.p0 + u * (line_.p1 - line_.p0);
    const double phi = a_.phi0 + u * (a_.phi1 - a_.phi0);
    return a_.center + a_.radius * cplx(std::cos(phi), std::sin(phi));
}

cplx Segment::derivative(double u) const {
    if (!arc_) return line_.p1 - line_.p0;
    const double dphi = a_.phi1 - a_.phi0;
    const double phi = a_.phi0 + u * dphi;
    return a_.radius * dphi * cplx(-std::sin(phi), std::cos(phi));
}

double Segment::length() const {
    if (!arc_) return std::abs(line_.p1 - line_.p0);
    return a_.radius * std::abs(a_.phi1 - a_.phi0);
}

Segment Segment::sub(double u0, double u1) const {
    if (!arc_) return Segment(Line{point(u0), point(u1)});
    const double d = a_.phi1 - a_.phi0;
    return Segment(Arc{a_.center, a_.radius, a_.phi0 + u0 * d, a_.phi0 + u1 * d});
}

double Segment::distance(cplx p) const {
    if (!arc_) {
        const cplx d = line_.p1 - line_.p0;
        const double len2 = std::norm(d);
        double u = len2 > 0.0 ? std::real((p - line_.p0) * std::conj(d)) / len2 : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        return std::abs(p - point(u));
    }
    // Closest point on the full circle if its angle lies inside the arc, else an endpoint.
    const cplx rel = p - a_.center;
    double best = std::min(std::abs(p - start()), std::abs(p - end()));
    if (std::abs(rel) > 0.0) {
        const double ang = std::arg(rel);
        const double lo = std::min(a_.phi0, a_.phi1), hi = std::max(a_.phi0, a_.phi1);
        for (int k = -2; k <= 2; ++k) {
            const double a = ang + k * kTwoPi;
            if (a >= lo && a <= hi) best = std::min(best, std::abs(std::abs(rel) - a_.radius));
        }
    } else {
        best = a_.radius;
    }
    return best;
}

Contour::Contour(std::vector<Segment> segments, bool closed) : segs_(std::move(segments)), closed_(closed) {
    if (segs_.empty()) throw ParameterError("contour needs at least one segment");
    for (std::size_t i = 1; i < segs_.size(); ++i) {
        const double gap = std::abs(segs_[i].start() - segs_[i - 1].end());
        if (gap > kJoinTol * std::max(1.0, std::abs(segs_[i].start())))
            throw ParameterError("contour segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                 " do not join (gap " + std::to_string(gap) + ")");
    }
    if (closed_) {
        const double gap = std::abs(segs_.front().start() - segs_.back().end());
        if (gap > kJoinTol * std::max(1.0, std::abs(segs_.front().start())))
            throw ParameterError("closed contour does not return to its start");
    }
}

bool Contour::full_circle() const {
    return closed_ && segs_.size() == 1 && segs_[0].is_arc() &&
           std::abs(std::abs(segs_[0].arc().phi1 - segs_[0].arc().phi0) - kTwoPi) < 1e-14;
}

double Contour::length() const {
    double l = 0.0;
    for (const auto& s : segs_) l += s.length();
    return l;
}

Contour circle(double r, cplx center) {
    if (!(r > 0.0)) throw ParameterError("circle radius must be positive");
    return Contour({Segment(Arc{center, r, 0.0, kTwoPi})}, true);
}

KeyholeParts keyhole_parts(double x, double theta, double R, double r) {
    if (!(x > 0.0)) throw ParameterError("keyhole centre must be positive");
    if (!(theta > 0.0 && theta < kPi)) throw ParameterError("keyhole angle must lie in (0, pi)");
    if (!(R > 0.0)) throw ParameterError("keyhole outer radius must be positive");
    const double rr = std::abs(r);
    const cplx up = std::polar(1.0, theta);
    const cplx down = std::conj(up);
    // |x + t e^{i theta}| = R; take the first crossing beyond the inner arc. When R < x the ray
    // meets the circle twice and the nearer point is the one that bounds the local part.
    const double disc = R * R - x * x * std::sin(theta) * std::sin(theta);
    if (disc < 0.0) throw ParameterError("keyhole ray misses the outer circle");
    const double sq = std::sqrt(disc), mid = -x * std::cos(theta);
    double t = mid - sq > rr ? mid - sq : mid + sq;
    if (!(t > rr)) throw ParameterError("keyhole needs the outer circle beyond the inner arc");
    const cplx zeta_plus = x + t * up;
    const cplx zeta_minus = x + t * down;
    const cplx z_plus = x + rr * up;
    const cplx z_minus = x + rr * down;
    Segment inner = rr > 0.0 ? Segment(Arc{x, rr, -theta, r > 0.0 ? theta : theta - kTwoPi})
                             : Segment(Line{cplx(x, 0.0), cplx(x, 0.0)});
    const double phi_plus = std::arg(zeta_plus);
    return KeyholeParts{Segment(Line{zeta_minus, z_minus}), inner, Segment(Line{z_plus, zeta_plus}),
                        Segment(Arc{0.0, R, phi_plus, kTwoPi - phi_plus})};
}

namespace {

std::vector<Segment> inner_segments(const KeyholeParts& k) {
    std::vector<Segment> s{k.in_line};
    if (k.inner_arc.is_arc()) s.push_back(k.inner_arc);
    s.push_back(k.out_line);
    return s;
}

}  // namespace

Contour keyhole(double x, double theta, double R, double r) {
    const auto k = keyhole_parts(x, theta, R, r);
    auto s = inner_segments(k);
    s.push_back(k.outer_arc);
    return Contour(std::move(s), true);
}

Contour keyhole_inner(double x, double theta, double R, double r) {
    return Contour(inner_segments(keyhole_parts(x, theta, R, r)), false);
}

Contour keyhole_outer(double x, double theta, double R, double r) {
    return Contour({keyhole_parts(x, theta, R, r).outer_arc}, false);
}

Contour ray(cplx a, double phi, double r, double truncation) {
    if (!(phi > 0.0 && phi < kPi)) throw ParameterError("ray angle must lie in (0, pi)");
    if (!(truncation > std::abs(r))) throw ParameterError("ray truncation must exceed |r|");
    const double rr = std::abs(r);
    const cplx up = std::polar(1.0, phi);
    const cplx down = std::conj(up);
    std::vector<Segment> s{Segment(Line{a + truncation * down, a + rr * down})};
    if (rr > 0.0) s.push_back(Segment(Arc{a, rr, -phi, r > 0.0 ? phi : phi - kTwoPi}));
    s.push_back(Segment(Line{a + rr * up, a + truncation * up}));
    return Contour(std::move(s), false);
}

bool crosses_negative_axis(const Contour& c) {
    for (const auto& s : c.segments()) {
        if (!s.is_arc()) {
            const cplx p0 = s.line().p0, p1 = s.line().p1;
            const double y0 = p0.imag(), y1 = p1.imag();
            if (y0 == 0.0 && p0.real() <= 0.0) return true;
            if (y1 == 0.0 && p1.real() <= 0.0) return true;
            if ((y0 < 0.0 && y1 > 0.0) || (y0 > 0.0 && y1 < 0.0)) {
                const double u = y0 / (y0 - y1);
                if (p0.real() + u * (p1.real() - p0.real()) <= 0.0) return true;
            }
            if (y0 == 0.0 && y1 == 0.0 && std::min(p0.real(), p1.real()) <= 0.0) return true;
        } else {
            const Arc& a = s.arc();
            const double sv = -a.center.imag() / a.radius;
            if (std::abs(sv) > 1.0) continue;
            const double base = std::asin(sv);
            const double lo = std::min(a.phi0, a.phi1), hi = std::max(a.phi0, a.phi1);
            for (double cand : {base, kPi - base}) {
                for (int k = -3; k <= 3; ++k) {
                    const double ang = cand + k * kTwoPi;
                    if (ang < lo || ang > hi) continue;
                    if (a.center.real() + a.radius * std::cos(ang) <= 0.0) return true;
                }
            }
        }
    }
    return false;
}

double winding_number(const Contour& c, cplx p) {
    if (!c.closed()) throw ParameterError("winding number needs a closed contour");
    double total = 0.0;
    for (const auto& s : c.segments()) {
        // A piece shorter than a quarter of its distance to p cannot wind around it.
        const double len = s.length();
        std::vector<std::pair<double, double>> stack{{0.0, 1.0}};
        while (!stack.empty()) {
            auto [u0, u1] = stack.back();
            stack.pop_back();
            const cplx a = s.point(u0) - p, b = s.point(u1) - p;
            if (std::abs(a) == 0.0 || std::abs(b) == 0.0) throw SingularEvaluation("point lies on the contour");
            const double turn = std::arg(b / a);
            const bool coarse = len * (u1 - u0) > 0.25 * std::min(std::abs(a), std::abs(b)) || std::abs(turn) > 0.05;
            if (coarse && u1 - u0 > 1e-12) {
                const double um = 0.5 * (u0 + u1);
                stack.push_back({um, u1});
                stack.push_back({u0, um});
            } else {
                total += turn;
            }
        }
    }
    return total / kTwoPi;
}

double min_modulus(const Contour& c) {
    double m = std::numeric_limits<double>::infinity();
    for (auto z : sample(c, 4000)) m = std::min(m, std::abs(z));
    return m;
}

double max_modulus(const Contour& c) {
    double m = 0.0;
    for (auto z : sample(c, 4000)) m = std::max(m, std::abs(z));
    return m;
}

double distance(const Contour& a, const Contour& b) {
    const auto pb = sample(b, 400);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : a.segments())
        for (auto z : pb) d = std::min(d, s.distance(z));
    return d;
}

std::string to_json(const Contour& c) {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : c.segments()) {
        if (s.is_arc()) {
            const auto& a = s.arc();
            segs.push_back({{"type", "arc"},
                            {"center", {a.center.real(), a.center.imag()}},
                            {"radius", a.radius},
                            {"phi0", a.phi0},
                            {"phi1", a.phi1},
                            {"orientation", a.phi1 > a.phi0 ? 1 : -1}});
        } else {
            const auto& l = s.line();
            segs.push_back({{"type", "line"}, {"p0", {l.p0.real(), l.p0.imag()}}, {"p1", {l.p1.real(), l.p1.imag()}}});
        }
    }
    return nlohmann::json{{"closed", c.closed()}, {"segments", segs}}.dump();
}

}  // namespace hslpp::contour
