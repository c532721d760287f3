#include <doctest.h>

#include <algorithm>

#include "coniclines/moduli_maps.hpp"
#include "coniclines/rng.hpp"

using namespace coniclines;

namespace {

PointedTree tree_with_coords(std::vector<VertexId> vs, std::vector<Edge> es,
                             std::map<LegLabel, VertexId> legs, SplitMix64& rng) {
    PointedTree bare(vs, es, legs);
    PointedTree::Coords coords;
    for (VertexId v : bare.vertices()) {
        std::set<std::int64_t> used;
        auto draw = [&] {
            std::int64_t x;
            do {
                x = rng.range(-30, 30);
            } while (!used.insert(x).second);
            return P1Point(x, 1);
        };
        for (LegLabel l : bare.leg_labels_at(v))
            coords[v].emplace(Slot::for_leg(l), draw());
        for (const auto& e : bare.edges())
            if (e.first == v || e.second == v)
                coords[v].emplace(Slot::for_edge(e), draw());
    }
    return PointedTree(vs, es, legs, coords);
}

PointedTree one_vertex(int m, SplitMix64& rng) {
    std::map<LegLabel, VertexId> legs;
    for (int i = 1; i <= m; ++i)
        legs[i] = 1;
    return tree_with_coords({1}, {}, legs, rng);
}

PointedTree two_vertex(int a, int b, SplitMix64& rng) {
    std::map<LegLabel, VertexId> legs;
    for (int i = 1; i <= a; ++i)
        legs[i] = 1;
    for (int i = 0; i < b; ++i)
        legs[a + 1 + i] = 2;
    return tree_with_coords({1, 2}, {{1, 2}}, legs, rng);
}

PointedTree chain(int a, int b, int c, SplitMix64& rng) {
    std::map<LegLabel, VertexId> legs;
    int next = 1;
    for (int i = 0; i < a; ++i)
        legs[next++] = 1;
    for (int i = 0; i < b; ++i)
        legs[next++] = 2;
    for (int i = 0; i < c; ++i)
        legs[next++] = 3;
    return tree_with_coords({1, 2, 3}, {{1, 2}, {2, 3}}, legs, rng);
}

BinaryForm form_at(std::vector<std::pair<long, Weight>> roots) {
    std::vector<std::pair<P1Point, Weight>> rs;
    for (auto [t, w] : roots)
        rs.emplace_back(P1Point(t, 1), w);
    return BinaryForm(std::move(rs));
}

} // namespace

TEST_CASE("f_map on a one-vertex tree returns the leg coordinates") {
    SplitMix64 rng(101);
    PointedTree t = one_vertex(8, rng);
    BinaryFormClass f = f_map(t, 3);
    CHECK(f.degree() == 8);
    CHECK(f.form.multiplicity_profile() == std::vector<Weight>(8, 1));
    // Roots are exactly the leg coordinates.
    for (LegLabel l = 1; l <= 8; ++l) {
        P1Point c = t.coord_at(1, Slot::for_leg(l));
        bool found = false;
        for (const auto& [pt, w] : f.form.roots())
            if (pt == c)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("f_map on the (6,4) tree weights the contracted branch") {
    SplitMix64 rng(103);
    PointedTree t = two_vertex(6, 4, rng);
    BinaryFormClass f = f_map(t, 4);
    CHECK(f.degree() == 10);
    std::vector<Weight> expect{1, 1, 1, 1, 1, 1, 4};
    CHECK(f.form.multiplicity_profile() == expect);
    // The 4-fold root sits at the edge coordinate of the central vertex.
    P1Point edge = t.coord_at(1, Slot::for_edge(make_edge(1, 2)));
    bool found = false;
    for (const auto& [pt, w] : f.form.roots())
        if (w == 4)
            found = pt == edge;
    CHECK(found);
}

TEST_CASE("f_map without a central vertex is the canonical balanced class") {
    SplitMix64 rng(105);
    PointedTree t = two_vertex(4, 4, rng);
    BinaryFormClass f = f_map(t, 3);
    CHECK(f.form.multiplicity_profile() == std::vector<Weight>{4, 4});
    CHECK(binary_form_verdict(f.form).status == Status::StrictlySemistable);
}

TEST_CASE("alpha recovers the marking parameters of a unit configuration") {
    SplitMix64 rng(107);
    PointedTree t = one_vertex(8, rng);
    // psi of the Veronese embedding of the legs…
    auto contraction = contract_to_conic(t, {1});
    REQUIRE(contraction.embedded.has_value());
    LineConfig r = psi(*contraction.embedded);
    BinaryFormClass back = alpha(r, 3);
    CHECK(back.degree() == 8);
    // …matches the leg coordinates up to a Moebius transformation.
    CHECK(mobius_equivalent(back.form, f_map(t, 3).form));
}

TEST_CASE("alpha on weighted profiles keeps the multiplicity profile") {
    MarkedConic k = generic_realize(
        AbstractMarkedConic::smooth(std::vector<Weight>{2, 1, 1, 1, 1, 1, 1}), 5);
    BinaryFormClass b = alpha(psi(k), 3);
    CHECK(b.form.multiplicity_profile() == std::vector<Weight>{1, 1, 1, 1, 1, 1, 2});
    CHECK(binary_form_verdict(b.form).status == Status::Stable);
}

TEST_CASE("alpha composed with psi recovers the marking parameters") {
    // Realizations live on y^2 = xz, so the marking parameters are readable
    // off the inverse Veronese map; alpha must reproduce them up to a
    // Moebius transformation.
    std::vector<std::vector<Weight>> profiles = {
        {1, 1, 1, 1, 1, 1, 1, 1}, {2, 2, 2, 1, 1}, {3, 3, 2}, {3, 2, 2, 2, 1}};
    for (const auto& ws : profiles) {
        Weight m = 0;
        for (Weight w : ws)
            m += w;
        int g = static_cast<int>((m - 2) / 2);
        MarkedConic k = generic_realize(AbstractMarkedConic::smooth(ws), 77);
        std::vector<std::pair<P1Point, Weight>> params;
        for (const auto& mk : k.markings())
            params.emplace_back(inverse_veronese(mk.point), mk.weight);
        BinaryForm expected(params);
        BinaryFormClass got = alpha(psi(k), g);
        CHECK(mobius_equivalent(got.form, expected));
    }
}

TEST_CASE("alpha rejects reducible images") {
    auto a = AbstractMarkedConic::two_line(std::vector<Weight>(6, 1), std::vector<Weight>(4, 1));
    LineConfig two_line = psi(generic_realize(a, 1));
    CHECK_THROWS_AS(alpha(two_line, 4), Error);
}

TEST_CASE("beta prefers the irreducible principal part") {
    SplitMix64 rng(109);
    PointedTree t = two_vertex(6, 4, rng);
    LineConfig r = beta(t, 4);
    // The chosen part is the weight-6 vertex: a smooth contraction, so no
    // line carries multiplicity binom(6,2)=15.
    CHECK(r.total() == 45);
    auto mults = r.multiplicity_multiset();
    CHECK(std::find(mults.begin(), mults.end(), 15) == mults.end());
    CHECK(config_verdict(r).semistable());
}

TEST_CASE("beta on the (4,4) tree returns the two-line boundary image") {
    SplitMix64 rng(111);
    PointedTree t = two_vertex(4, 4, rng);
    LineConfig r = beta(t, 3);
    CHECK(r.total() == 28);
    CHECK(r.mu_line(ProjectiveLine(1, 0, 0)) == 6);
    CHECK(r.mu_line(ProjectiveLine(0, 1, 0)) == 6);
    CHECK(config_verdict(r).semistable());
}

TEST_CASE("beta needs a principal part") {
    // Chain with legs (5, 1, 6) at g = 5: every single-vertex contraction
    // carries a marking of weight >= 5 (already unstable at g = 5) and both
    // pair contractions inherit one, so no candidate is semistable.
    SplitMix64 rng(113);
    PointedTree t = chain(5, 1, 6, rng);
    REQUIRE(check_stable_tree(t));
    REQUIRE(t.leg_count() == 12);
    CHECK(principal_parts(t, 5).empty());
    CHECK_THROWS_AS(beta(t, 5), Error);
}

TEST_CASE("mobius equivalence on explicit witnesses") {
    // {0,1,inf,2} maps to {inf,1,0,1/2} under t -> 1/t.
    std::vector<std::pair<P1Point, Weight>> r1 = {
        {P1Point(0, 1), 1}, {P1Point(1, 1), 1}, {P1Point::infinity(), 1}, {P1Point(2, 1), 1}};
    std::vector<std::pair<P1Point, Weight>> r2 = {
        {P1Point::infinity(), 1}, {P1Point(1, 1), 1}, {P1Point(0, 1), 1}, {P1Point(1, 2), 1}};
    CHECK(mobius_equivalent(BinaryForm(r1), BinaryForm(r2)));
    CHECK(mobius_equivalent(BinaryForm(r1), BinaryForm(r1)));

    // Profile mismatch.
    CHECK_FALSE(mobius_equivalent(form_at({{0, 2}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}}),
                                  form_at({{0, 1}, {1, 1}, {2, 1}, {3, 1},
                                           {4, 1}, {5, 1}, {6, 1}, {7, 1}})));

    // Same profile, different cross-ratios.
    CHECK_FALSE(mobius_equivalent(form_at({{0, 1}, {1, 1}, {2, 1}, {4, 1}}),
                                  form_at({{0, 1}, {1, 1}, {2, 1}, {3, 1}})));

    CHECK_THROWS_AS(mobius_equivalent(form_at({{0, 1}, {1, 1}}), form_at({{0, 1}, {1, 2}})),
                    Error);
}

TEST_CASE("mobius equivalence is an equivalence relation on seeded forms") {
    SplitMix64 rng(115);
    for (int trial = 0; trial < 10; ++trial) {
        // A random form and a random Moebius image of it.
        std::set<std::int64_t> used;
        std::vector<std::pair<P1Point, Weight>> roots;
        std::vector<Weight> profile{2, 1, 1, 1, 1, 1, 1};
        for (Weight w : profile) {
            std::int64_t x;
            do {
                x = rng.range(-20, 20);
            } while (!used.insert(x).second);
            roots.emplace_back(P1Point(x, 1), w);
        }
        BinaryForm f(roots);
        Int a, b, c, d;
        do {
            a = rng.range(-5, 5);
            b = rng.range(-5, 5);
            c = rng.range(-5, 5);
            d = rng.range(-5, 5);
        } while (sgn(a * d - b * c) == 0);
        std::vector<std::pair<P1Point, Weight>> moved;
        for (const auto& [pt, w] : f.roots())
            moved.emplace_back(P1Point(a * pt.a() + b * pt.b(), c * pt.a() + d * pt.b()), w);
        BinaryForm g(moved);
        CHECK(mobius_equivalent(f, f));         // reflexive
        CHECK(mobius_equivalent(f, g));         // the witness transformation
        CHECK(mobius_equivalent(g, f));         // symmetric

        // Transitive: a second image h of g must stay equivalent to f.
        Int a2, b2, c2, d2;
        do {
            a2 = rng.range(-5, 5);
            b2 = rng.range(-5, 5);
            c2 = rng.range(-5, 5);
            d2 = rng.range(-5, 5);
        } while (sgn(a2 * d2 - b2 * c2) == 0);
        std::vector<std::pair<P1Point, Weight>> moved_again;
        for (const auto& [pt, w] : g.roots())
            moved_again.emplace_back(P1Point(a2 * pt.a() + b2 * pt.b(), c2 * pt.a() + d2 * pt.b()),
                                     w);
        BinaryForm h(moved_again);
        CHECK(mobius_equivalent(g, h));
        CHECK(mobius_equivalent(f, h));
    }
}

TEST_CASE("factorization holds on seeded central-vertex trees") {
    SplitMix64 rng(117);
    // One-vertex trees at g = 3.
    for (int trial = 0; trial < 3; ++trial)
        CHECK(factorization_check(one_vertex(8, rng), 3));
    // (6,4) trees at g = 4.
    for (int trial = 0; trial < 3; ++trial)
        CHECK(factorization_check(two_vertex(6, 4, rng), 4));
    // Chains (3,2,3) at g = 3 with the middle vertex central.
    for (int trial = 0; trial < 3; ++trial)
        CHECK(factorization_check(chain(3, 2, 3, rng), 3));
}

TEST_CASE("irreducible principal parts sit at the central vertex") {
    SplitMix64 rng(119);
    for (int a = 2; a <= 8; ++a) {
        int b = 10 - a;
        if (b < 2)
            continue;
        PointedTree t = two_vertex(a, b, rng);
        auto center = central_vertex(t);
        for (const auto& part : principal_parts(t, 4)) {
            if (part.support.size() != 1)
                continue;
            REQUIRE(center.has_value());
            CHECK(part.support.front() == *center);
        }
    }
}

TEST_CASE("enumeration: semistable vertex contractions are central, m in {8,10}") {
    // All labeled stable trees with up to four vertices. The semistability of
    // a contraction depends only on its abstract weight profile, so verdicts
    // are cached across trees.
    std::map<std::vector<Weight>, bool> verdict_cache;
    auto semistable_profile = [&](std::vector<Weight> ws) {
        std::sort(ws.begin(), ws.end());
        auto it = verdict_cache.find(ws);
        if (it != verdict_cache.end())
            return it->second;
        MarkedConic k = generic_realize(AbstractMarkedConic::smooth(ws), 0);
        bool ok = config_verdict(psi(k)).semistable();
        verdict_cache.emplace(std::move(ws), ok);
        return ok;
    };

    std::vector<std::vector<std::vector<Edge>>> shapes_by_n = {
        {{}},                                           // n = 1
        {{make_edge(1, 2)}},                            // n = 2
        {{make_edge(1, 2), make_edge(2, 3)},            // n = 3 paths
         {make_edge(1, 2), make_edge(1, 3)},
         {make_edge(1, 3), make_edge(2, 3)}},
        {{make_edge(1, 2), make_edge(2, 3), make_edge(3, 4)}, // n = 4 path
         {make_edge(1, 2), make_edge(1, 3), make_edge(1, 4)}}, // n = 4 star
    };

    int trees = 0, semistable_singles = 0;
    for (int m : {8, 10}) {
        for (int n = 1; n <= 4; ++n) {
            for (const auto& edges : shapes_by_n[n - 1]) {
                std::vector<VertexId> vs;
                for (int v = 1; v <= n; ++v)
                    vs.push_back(v);
                // Enumerate leg counts meeting the stability minimum.
                std::vector<int> degree(n, 0);
                for (const auto& e : edges) {
                    ++degree[e.first - 1];
                    ++degree[e.second - 1];
                }
                std::vector<int> counts(n, 0);
                std::function<void(int, int)> rec = [&](int idx, int left) {
                    int need = std::max(0, 3 - degree[idx]);
                    if (idx == n - 1) {
                        if (left < need)
                            return;
                        counts[idx] = left;
                        std::map<LegLabel, VertexId> legs;
                        int next = 1;
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < counts[i]; ++j)
                                legs[next++] = i + 1;
                        PointedTree t(vs, edges, legs);
                        ++trees;
                        auto center = central_vertex(t);
                        for (VertexId v : t.vertices()) {
                            auto abstract = contract_to_conic(t, {v}).abstract;
                            if (!semistable_profile(abstract.weights))
                                continue;
                            ++semistable_singles;
                            REQUIRE(center.has_value());
                            CHECK(*center == v);
                        }
                        return;
                    }
                    for (int take = need; take <= left; ++take) {
                        counts[idx] = take;
                        rec(idx + 1, left - take);
                    }
                };
                rec(0, m);
            }
        }
    }
    // Shape representatives suffice: relabeling changes neither contractions
    // nor centrality.
    CHECK(trees == 197);
    CHECK(semistable_singles > 50);
}
