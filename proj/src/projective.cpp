#include "coniclines/projective.hpp"

#include <sstream>

namespace coniclines {

Triple canonicalize_triple(Triple v) {
    Int g = gcd(gcd(abs(v[0]), abs(v[1])), abs(v[2]));
    if (sgn(g) == 0)
        fail(ErrorCode::invalid_argument, "homogeneous triple must not be zero");
    for (auto& x : v)
        x /= g;
    for (const auto& x : v) {
        int s = sgn(x);
        if (s > 0)
            break;
        if (s < 0) {
            for (auto& y : v)
                y = -y;
            break;
        }
    }
    return v;
}

Triple canonicalize_triple(const std::array<Rational, 3>& v) {
    Int den = lcm(lcm(v[0].get_den(), v[1].get_den()), v[2].get_den());
    Triple t;
    for (int i = 0; i < 3; ++i) {
        Rational scaled = v[i] * Rational(den);
        scaled.canonicalize();
        t[i] = scaled.get_num();
    }
    return canonicalize_triple(std::move(t));
}

Triple cross(const Triple& a, const Triple& b) {
    return Triple{a[1] * b[2] - a[2] * b[1],
                  a[2] * b[0] - a[0] * b[2],
                  a[0] * b[1] - a[1] * b[0]};
}

Int dot(const Triple& a, const Triple& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

int compare(const Triple& a, const Triple& b) {
    for (int i = 0; i < 3; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0)
            return c;
    }
    return 0;
}

std::string ProjectivePoint::str() const {
    std::ostringstream os;
    os << "(" << c_[0] << ":" << c_[1] << ":" << c_[2] << ")";
    return os.str();
}

std::string ProjectiveLine::str() const {
    std::ostringstream os;
    os << "[" << c_[0] << ":" << c_[1] << ":" << c_[2] << "]";
    return os.str();
}

ProjectiveLine line_through(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p == q)
        fail(ErrorCode::equal_points, "line_through requires distinct points");
    return ProjectiveLine(cross(p.coords(), q.coords()));
}

ProjectivePoint intersect_lines(const ProjectiveLine& l1, const ProjectiveLine& l2) {
    if (l1 == l2)
        fail(ErrorCode::equal_lines, "intersect_lines requires distinct lines");
    return ProjectivePoint(cross(l1.coeffs(), l2.coeffs()));
}

P1Point::P1Point(Int a, Int b) : a_(std::move(a)), b_(std::move(b)) {
    Int g = gcd(abs(a_), abs(b_));
    if (sgn(g) == 0)
        fail(ErrorCode::invalid_argument, "point of P^1 must not be (0:0)");
    a_ /= g;
    b_ /= g;
    int lead = sgn(a_) != 0 ? sgn(a_) : sgn(b_);
    if (lead < 0) {
        a_ = -a_;
        b_ = -b_;
    }
}

P1Point P1Point::from_rational(const Rational& t) {
    return P1Point(t.get_num(), t.get_den());
}

std::string P1Point::str() const {
    if (is_infinity())
        return "inf";
    std::ostringstream os;
    os << a_;
    if (b_ != 1)
        os << "/" << b_;
    return os.str();
}

ProjectivePoint veronese(const P1Point& t) {
    return ProjectivePoint(t.b() * t.b(), t.a() * t.b(), t.a() * t.a());
}

P1Point inverse_veronese(const ProjectivePoint& p) {
    const Triple& c = p.coords();
    if (sgn(c[0]) != 0)
        return P1Point(c[1], c[0]);
    // x = 0 on y^2 = xz forces y = 0, leaving the point at infinity.
    return P1Point(c[2], c[1]);
}

} // namespace coniclines
