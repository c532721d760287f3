#include <doctest.h>

#include <set>

#include "coniclines/conic.hpp"
#include "coniclines/rng.hpp"

using namespace coniclines;

namespace {

// Coefficients in the fixed order [x^2, y^2, z^2, xy, xz, yz].
Conic conic_of(std::array<long, 6> c) {
    ConicCoeffs cc;
    for (int i = 0; i < 6; ++i)
        cc[i] = Int(c[i]);
    return Conic::classify(cc);
}

} // namespace

TEST_CASE("classification by rank") {
    Conic smooth = conic_of({0, 1, 0, 0, -1, 0}); // y^2 - xz
    CHECK(smooth.rank() == 3);
    CHECK(smooth.smooth());

    Conic axes = conic_of({0, 0, 0, 1, 0, 0}); // xy
    CHECK(axes.rank() == 2);
    CHECK(axes.components().first == ProjectiveLine(0, 1, 0));
    CHECK(axes.components().second == ProjectiveLine(1, 0, 0));
    CHECK(axes.node() == ProjectivePoint(0, 0, 1));

    try {
        conic_of({1, 0, 0, 0, 0, 0}); // x^2
        FAIL("expected RankOne");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::rank_one);
    }

    // x^2 + y^2 has rank 2 but splits only over Q(i).
    try {
        conic_of({1, 1, 0, 0, 0, 0});
        FAIL("expected IrrationalSplit");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::irrational_split);
    }

    // The rational-coefficient entry point scales away denominators.
    std::array<Rational, 6> scaled{Rational(0), make_rational(1, 3), Rational(0),
                                   Rational(0), make_rational(-1, 3), Rational(0)};
    CHECK(Conic::classify(scaled) == Conic::veronese_conic());
}

TEST_CASE("rank-2 split on a skew example") {
    // (x + 2y - z)(3x - y + 4z)
    Conic c = conic_of({3, -2, -4, 5, 1, 9});
    CHECK(c.rank() == 2);
    auto [l1, l2] = c.components();
    std::set<ProjectiveLine> lines{l1, l2};
    CHECK(lines.count(ProjectiveLine(1, 2, -1)) == 1);
    CHECK(lines.count(ProjectiveLine(3, -1, 4)) == 1);
    CHECK(c.node() == intersect_lines(ProjectiveLine(1, 2, -1), ProjectiveLine(3, -1, 4)));
}

TEST_CASE("tangent lines") {
    Conic c = Conic::veronese_conic();
    CHECK(tangent_at(c, ProjectivePoint(1, 0, 0)) == ProjectiveLine(0, 0, 1));
    CHECK(tangent_at(c, ProjectivePoint(1, 1, 1)) == ProjectiveLine(1, -2, 1));
    CHECK_THROWS_AS(tangent_at(c, ProjectivePoint(1, 1, 0)), Error);

    Conic axes = Conic::two_axes();
    CHECK(tangent_at(axes, ProjectivePoint(0, 1, 3)) == ProjectiveLine(1, 0, 0));
    CHECK_THROWS_AS(tangent_at(axes, ProjectivePoint(0, 0, 1)), Error); // node
}

TEST_CASE("tangent meets a smooth conic with a double root") {
    // Restricting the conic to p + s*q for q on the tangent gives a quadratic
    // in s with a double root at s = 0, i.e. both coefficients of s^0, s^1
    // vanish.
    Conic c = Conic::veronese_conic();
    SplitMix64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        P1Point t(Int(rng.range(-30, 30)), Int(1));
        ProjectivePoint p = veronese(t);
        ProjectiveLine tang = tangent_at(c, p);
        // Pick q on tang distinct from p.
        ProjectivePoint q = [&] {
            ProjectivePoint a = intersect_lines(tang, ProjectiveLine(1, 0, 0));
            if (a != p)
                return a;
            return intersect_lines(tang, ProjectiveLine(0, 1, 0));
        }();
        REQUIRE(q != p);
        // Q(p + s q) = Q(p) + s * B + s^2 * Q(q) with B the mixed term.
        Int qp = c.evaluate(p);
        Int qq = c.evaluate(q);
        Int mixed = dot(p.coords(), c.doubled_matrix().apply(q.coords()));
        CHECK(sgn(qp) == 0);
        CHECK(sgn(mixed) == 0);
        CHECK(sgn(qq) != 0); // double contact only at p
    }
}

TEST_CASE("fit through five veronese points") {
    std::vector<ProjectivePoint> pts;
    for (long t = 0; t <= 4; ++t)
        pts.push_back(veronese(P1Point(t, 1)));
    CHECK(fit_conic(pts, {}) == Conic::veronese_conic());
}

TEST_CASE("fit through three contacts is consistent") {
    std::vector<Contact> contacts = {
        {ProjectivePoint(1, 0, 0), ProjectiveLine(0, 0, 1)},
        {ProjectivePoint(0, 0, 1), ProjectiveLine(1, 0, 0)},
        {ProjectivePoint(1, 1, 1), ProjectiveLine(1, -2, 1)},
    };
    CHECK(fit_conic({}, contacts) == Conic::veronese_conic());
}

TEST_CASE("degenerate five-point inputs are rejected") {
    // Four points on the line y = 0 plus one off it.
    std::vector<ProjectivePoint> pts = {
        ProjectivePoint(0, 0, 1), ProjectivePoint(1, 0, 1), ProjectivePoint(2, 0, 1),
        ProjectivePoint(3, 0, 1), ProjectivePoint(0, 1, 1)};
    try {
        fit_conic(pts, {});
        FAIL("expected a degenerate fit to throw");
    } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::underdetermined
               || e.code() == ErrorCode::degenerate_rank_one));
    }

    // Exactly three collinear points force the split conic through them.
    std::vector<ProjectivePoint> three = {
        ProjectivePoint(0, 0, 1), ProjectivePoint(1, 0, 1), ProjectivePoint(2, 0, 1),
        ProjectivePoint(0, 1, 1), ProjectivePoint(1, 2, 1)};
    Conic c = fit_conic(three, {});
    CHECK(c.rank() == 2);
}

TEST_CASE("fit round trip over random five-point samples") {
    SplitMix64 rng(23);
    int done = 0;
    while (done < 100) {
        std::set<std::int64_t> used;
        std::vector<ProjectivePoint> pts;
        while (pts.size() < 5) {
            std::int64_t t = rng.range(-60, 60);
            if (used.insert(t).second)
                pts.push_back(veronese(P1Point(Int(t), Int(1))));
        }
        CHECK(fit_conic(pts, {}) == Conic::veronese_conic());
        ++done;
    }
}

TEST_CASE("fit shapes are validated") {
    std::vector<ProjectivePoint> pts = {ProjectivePoint(1, 0, 0), ProjectivePoint(0, 0, 1)};
    CHECK_THROWS_AS(fit_conic(pts, {}), Error);
}

TEST_CASE("conic transform by a projectivity") {
    Conic c = Conic::veronese_conic();
    Mat3 a;
    a.m = {{{1, 2, 0}, {0, 1, 0}, {3, 0, 1}}};
    Conic image = c.transformed(a);
    SplitMix64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        P1Point t(Int(rng.range(-20, 20)), Int(1));
        CHECK(image.contains(apply_to_point(a, veronese(t))));
    }
}
