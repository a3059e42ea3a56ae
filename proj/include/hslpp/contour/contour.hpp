#pragma once

#include <complex>
#include <string>
#include <vector>

namespace hslpp::contour {

using cplx = std::complex<double>;

struct Line {
    cplx p0, p1;
};

// Orientation is the sign of phi1 - phi0.
struct Arc {
    cplx center;
    double radius;
    double phi0, phi1;
};

class Segment {
public:
    Segment(Line l) : arc_(false), line_(l) {}
    Segment(Arc a);

    bool is_arc() const { return arc_; }
    const Line& line() const { return line_; }
    const Arc& arc() const { return a_; }

    // u in [0,1]
    cplx point(double u) const;
    cplx derivative(double u) const;
    cplx start() const { return point(0.0); }
    cplx end() const { return point(1.0); }
    double length() const;
    Segment sub(double u0, double u1) const;
    // Approximate distance from p to the segment.
    double distance(cplx p) const;

private:
    bool arc_;
    Line line_{};
    Arc a_{};
};

class Contour {
public:
    static constexpr double kJoinTol = 1e-12;

    Contour() = default;
    Contour(std::vector<Segment> segments, bool closed);

    const std::vector<Segment>& segments() const { return segs_; }
    bool closed() const { return closed_; }
    bool full_circle() const;
    double length() const;
    cplx start() const { return segs_.front().start(); }
    cplx end() const { return segs_.back().end(); }

private:
    std::vector<Segment> segs_;
    bool closed_ = false;
};

// Positively oriented circle.
Contour circle(double r, cplx center = 0.0);

struct KeyholeParts {
    Segment in_line;     // zeta- -> z-
    Segment inner_arc;   // z- -> z+, clockwise iff r < 0
    Segment out_line;    // z+ -> zeta+
    Segment outer_arc;   // zeta+ -> zeta-, counterclockwise, radius R about 0
};

KeyholeParts keyhole_parts(double x, double theta, double R, double r);
// Closed contour C(x, theta, R, r).
Contour keyhole(double x, double theta, double R, double r);
// The keyhole without its outer arc (open, from zeta- to zeta+).
Contour keyhole_inner(double x, double theta, double R, double r);
// The outer arc alone.
Contour keyhole_outer(double x, double theta, double R, double r);

// Two-ray wedge through a at angles -phi, +phi with inner arc of radius |r|,
// oriented from a + T e^{-i phi} to a + T e^{i phi}.
Contour ray(cplx a, double phi, double r, double truncation);

// True if any point of the contour lies on the closed negative real axis.
bool crosses_negative_axis(const Contour& c);

// (1/2 pi i) \oint dz / (z - p) for a closed contour.
double winding_number(const Contour& c, cplx p);

// Min / max of |z| over the contour (sampled densely).
double min_modulus(const Contour& c);
double max_modulus(const Contour& c);
// Smallest distance between two contours (sampled).
double distance(const Contour& a, const Contour& b);

std::string to_json(const Contour& c);

}  // namespace hslpp::contour
