#include <doctest.h>

#include <algorithm>
#include <map>

#include "coniclines/marked_conic.hpp"
#include "coniclines/rng.hpp"

using namespace coniclines;

namespace {

MarkedConic units_on_veronese(const std::vector<long>& params, const std::vector<Weight>& weights) {
    std::vector<Marking> ms;
    for (size_t i = 0; i < params.size(); ++i)
        ms.push_back({veronese(P1Point(params[i], 1)), weights[i]});
    return MarkedConic(Conic::veronese_conic(), std::move(ms));
}

std::map<Mult, int> histogram(const LineConfig& r) {
    std::map<Mult, int> h;
    for (const auto& [line, mult] : r.entries())
        ++h[mult];
    return h;
}

} // namespace

TEST_CASE("marked conic invariants") {
    CHECK_THROWS_AS(units_on_veronese({0, 0}, {1, 1}), Error);   // duplicate point
    CHECK_THROWS_AS(units_on_veronese({0}, {1}), Error);         // total weight < 2
    CHECK_THROWS_AS(units_on_veronese({0}, {-2}), Error);        // nonpositive weight
    CHECK_THROWS_AS(MarkedConic(Conic::two_axes(),
                                {{ProjectivePoint(0, 0, 1), 2}}),
                    Error); // marking at the node
    CHECK_THROWS_AS(MarkedConic(Conic::veronese_conic(),
                                {{ProjectivePoint(1, 1, 0), 2}}),
                    Error); // off the conic
}

TEST_CASE("psi on eight unit markings") {
    MarkedConic k = units_on_veronese({0, 1, 2, 3, 4, 5, 6, 7},
                                      std::vector<Weight>(8, 1));
    LineConfig r = psi(k);
    CHECK(r.total() == 28);
    CHECK(r.distinct_count() == 28);
    for (const auto& [line, mult] : r.entries())
        CHECK(mult == 1);
}

TEST_CASE("psi with one double marking") {
    MarkedConic k = units_on_veronese({0, 1, 2, 3, 4, 5, 6}, {2, 1, 1, 1, 1, 1, 1});
    LineConfig r = psi(k);
    CHECK(r.total() == 28);
    CHECK(r.distinct_count() == 22);
    auto h = histogram(r);
    CHECK(h[1] == 16); // tangent at the double point plus 15 unit spans
    CHECK(h[2] == 6);
    CHECK(r.mu_line(tangent_at(k.conic(), veronese(P1Point(0, 1)))) == 1);
}

TEST_CASE("psi on a two-line support") {
    std::vector<Marking> ms;
    for (long t = 1; t <= 6; ++t)
        ms.push_back({ProjectivePoint(0, 1, t), 1});
    for (long t = 1; t <= 4; ++t)
        ms.push_back({ProjectivePoint(1, 0, t), 1});
    MarkedConic k(Conic::two_axes(), std::move(ms));
    LineConfig r = psi(k);
    CHECK(r.total() == 45);
    CHECK(r.mu_line(ProjectiveLine(1, 0, 0)) == 15); // x = 0 carries six markings
    CHECK(r.mu_line(ProjectiveLine(0, 1, 0)) == 6);  // y = 0 carries four
    CHECK(r.distinct_count() == 26);
}

TEST_CASE("total multiplicity identity over random profiles") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(rng.range(2, 7));
        std::vector<Weight> ws;
        Weight total = 0;
        for (int i = 0; i < n; ++i) {
            ws.push_back(rng.range(1, 4));
            total += ws.back();
        }
        MarkedConic k = generic_realize(AbstractMarkedConic::smooth(ws), trial);
        CHECK(psi(k).total() == binom2(total));
    }
}

TEST_CASE("predicted pattern for smooth profiles") {
    auto p = predicted_pattern(AbstractMarkedConic::smooth(std::vector<Weight>(8, 1)));
    CHECK(p.line_multiplicities == std::vector<Mult>(28, 1));
    CHECK(p.mu_by_weight.at(1) == 7);

    std::vector<Weight> w{4, 1, 1, 1, 1, 1, 1};
    auto q = predicted_pattern(AbstractMarkedConic::smooth(w));
    CHECK(q.mu_by_weight.at(4) == 30);
    CHECK(q.mu_by_weight.at(1) == 9);
}

TEST_CASE("predicted pattern for two-line profiles") {
    auto a = AbstractMarkedConic::two_line(std::vector<Weight>(6, 1), std::vector<Weight>(4, 1));
    auto p = predicted_pattern(a);
    std::vector<Mult> expected(24, 1);
    expected.push_back(6);
    expected.push_back(15);
    std::sort(expected.begin(), expected.end());
    CHECK(p.line_multiplicities == expected);
    CHECK(*p.mu_node == 21);
    CHECK(p.mu_component1.at(1) == 19);
    CHECK(p.mu_component2.at(1) == 12);
}

TEST_CASE("predicted pattern matches psi on certified realizations") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Weight> c1, c2;
        int n1 = static_cast<int>(rng.range(0, 4));
        int n2 = static_cast<int>(rng.range(1, 4));
        for (int i = 0; i < n1; ++i)
            c1.push_back(rng.range(1, 3));
        for (int i = 0; i < n2; ++i)
            c2.push_back(rng.range(1, 3));
        if (c1.empty() && c2.size() < 2)
            c2.push_back(1);
        Weight total = 0;
        for (Weight w : c1)
            total += w;
        for (Weight w : c2)
            total += w;
        if (total < 2)
            continue;
        auto a = AbstractMarkedConic::two_line(c1, c2);
        MarkedConic k = generic_realize(a, trial);
        CHECK(psi(k).multiplicity_multiset() == predicted_pattern(a).line_multiplicities);
    }
}

TEST_CASE("mu at markings follows the weight formula on smooth supports") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Weight> ws;
        Weight total = 0;
        int n = static_cast<int>(rng.range(3, 7));
        for (int i = 0; i < n; ++i) {
            ws.push_back(rng.range(1, 4));
            total += ws.back();
        }
        MarkedConic k = generic_realize(AbstractMarkedConic::smooth(ws), 1000 + trial);
        LineConfig r = psi(k);
        for (const auto& mk : k.markings()) {
            Mult mu = 0;
            for (const auto& [line, mult] : r.entries())
                if (incident(mk.point, line))
                    mu += mult;
            CHECK(mu == mk.weight * (total - mk.weight) + binom2(mk.weight));
        }
    }
}

TEST_CASE("generic realization is deterministic and certified") {
    auto a = AbstractMarkedConic::smooth(std::vector<Weight>(8, 1));
    MarkedConic k1 = generic_realize(a, 1);
    MarkedConic k2 = generic_realize(a, 1);
    CHECK(k1 == k2);
    MarkedConic k3 = generic_realize(a, 2);
    CHECK(k1 != k3);

    // The certificate itself: no three configuration lines meet off the
    // marking set.
    std::vector<ProjectivePoint> special;
    for (const auto& mk : k1.markings())
        special.push_back(mk.point);
    CHECK(concurrences_only_at(psi(k1), special));

    // Equally spaced parameters put four spans through one point, which the
    // certificate must reject.
    std::vector<Marking> ms;
    for (long t = 0; t <= 7; ++t)
        ms.push_back({veronese(P1Point(t, 1)), 1});
    MarkedConic equally(Conic::veronese_conic(), std::move(ms));
    std::vector<ProjectivePoint> pts;
    for (const auto& mk : equally.markings())
        pts.push_back(mk.point);
    CHECK_FALSE(concurrences_only_at(psi(equally), pts));
}

TEST_CASE("one-sided two-line profiles") {
    auto a = AbstractMarkedConic::two_line({}, std::vector<Weight>(4, 1));
    MarkedConic k = generic_realize(a, 1);
    LineConfig r = psi(k);
    CHECK(r.total() == 6);
    CHECK(r.distinct_count() == 1);
    CHECK_THROWS_AS(AbstractMarkedConic::two_line({}, {}), Error);
}
