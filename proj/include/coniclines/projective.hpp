#pragma once

#include <array>
#include <string>

#include "coniclines/errors.hpp"
#include "coniclines/rational.hpp"

namespace coniclines {

using Triple = std::array<Int, 3>;

// Canonical form of a homogeneous triple: primitive integer entries with the
// first nonzero entry positive. All-zero input is rejected. Equality and
// ordering of points/lines are componentwise on this form.
Triple canonicalize_triple(Triple v);

// Clears denominators of a rational triple and canonicalizes.
Triple canonicalize_triple(const std::array<Rational, 3>& v);

Triple cross(const Triple& a, const Triple& b);
Int dot(const Triple& a, const Triple& b);

int compare(const Triple& a, const Triple& b);

class ProjectivePoint {
public:
    explicit ProjectivePoint(Triple coords) : c_(canonicalize_triple(std::move(coords))) {}
    ProjectivePoint(Int x, Int y, Int z)
        : c_(canonicalize_triple(Triple{std::move(x), std::move(y), std::move(z)})) {}

    const Triple& coords() const { return c_; }

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ProjectivePoint& a, const ProjectivePoint& b) { return !(a == b); }
    friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) { return compare(a.c_, b.c_) < 0; }

    std::string str() const;

private:
    Triple c_;
};

class ProjectiveLine {
public:
    explicit ProjectiveLine(Triple coeffs) : c_(canonicalize_triple(std::move(coeffs))) {}
    ProjectiveLine(Int a, Int b, Int c)
        : c_(canonicalize_triple(Triple{std::move(a), std::move(b), std::move(c)})) {}

    const Triple& coeffs() const { return c_; }

    friend bool operator==(const ProjectiveLine& a, const ProjectiveLine& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ProjectiveLine& a, const ProjectiveLine& b) { return !(a == b); }
    friend bool operator<(const ProjectiveLine& a, const ProjectiveLine& b) { return compare(a.c_, b.c_) < 0; }

    std::string str() const;

private:
    Triple c_;
};

inline bool incident(const ProjectivePoint& p, const ProjectiveLine& l) {
    return sgn(dot(p.coords(), l.coeffs())) == 0;
}

// Span of two distinct points.
ProjectiveLine line_through(const ProjectivePoint& p, const ProjectivePoint& q);

// Meet of two distinct lines.
ProjectivePoint intersect_lines(const ProjectiveLine& l1, const ProjectiveLine& l2);

// A point of the projective line, canonicalized like the plane types.
// Convention: (a : b) has affine value a/b, so 0 = (0:1) and infinity = (1:0).
class P1Point {
public:
    P1Point(Int a, Int b);
    static P1Point infinity() { return P1Point(1, 0); }
    static P1Point from_rational(const Rational& t);

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    bool is_infinity() const { return sgn(b_) == 0; }

    friend bool operator==(const P1Point& x, const P1Point& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const P1Point& x, const P1Point& y) { return !(x == y); }
    friend bool operator<(const P1Point& x, const P1Point& y) {
        int c = cmp(x.a_, y.a_);
        return c != 0 ? c < 0 : cmp(x.b_, y.b_) < 0;
    }

    std::string str() const;

private:
    Int a_, b_;
};

// Degree-2 parametrization of the conic y^2 = xz: (a:b) -> (b^2 : ab : a^2),
// i.e. t -> (1 : t : t^2) in the affine chart, with infinity -> (0:0:1).
ProjectivePoint veronese(const P1Point& t);

// Inverse of the above for points on y^2 = xz (not validated here).
P1Point inverse_veronese(const ProjectivePoint& p);

} // namespace coniclines
