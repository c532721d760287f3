#include <doctest.h>

#include <algorithm>

#include "coniclines/stable_trees.hpp"

using namespace coniclines;

namespace {

// Two vertices 1, 2 joined by an edge, with the given leg counts.
PointedTree two_vertex_tree(int legs1, int legs2) {
    std::map<LegLabel, VertexId> legs;
    for (int i = 1; i <= legs1; ++i)
        legs[i] = 1;
    for (int i = 0; i < legs2; ++i)
        legs[legs1 + 1 + i] = 2;
    return PointedTree({1, 2}, {{1, 2}}, legs);
}

// Chain 1 - 2 - 3 with the given leg counts.
PointedTree chain_tree(int l1, int l2, int l3) {
    std::map<LegLabel, VertexId> legs;
    int next = 1;
    for (int i = 0; i < l1; ++i)
        legs[next++] = 1;
    for (int i = 0; i < l2; ++i)
        legs[next++] = 2;
    for (int i = 0; i < l3; ++i)
        legs[next++] = 3;
    return PointedTree({1, 2, 3}, {{1, 2}, {2, 3}}, legs);
}

PointedTree one_vertex_tree(int m) {
    std::map<LegLabel, VertexId> legs;
    for (int i = 1; i <= m; ++i)
        legs[i] = 1;
    return PointedTree({1}, {}, legs);
}

// Decorates every vertex with coordinates 0, 1, 2, ... over its slots.
PointedTree with_default_coords(const PointedTree& t) {
    PointedTree::Coords coords;
    for (VertexId v : t.vertices()) {
        long next = 0;
        for (LegLabel l : t.leg_labels_at(v))
            coords[v].emplace(Slot::for_leg(l), P1Point(next++, 1));
        for (const auto& e : t.edges())
            if (e.first == v || e.second == v)
                coords[v].emplace(Slot::for_edge(e), P1Point(next++, 1));
    }
    return PointedTree(t.vertices(), t.edges(), t.legs(), coords);
}

std::vector<Weight> sorted_weights(const AbstractMarkedConic& a) {
    std::vector<Weight> ws = a.weights;
    std::sort(ws.begin(), ws.end());
    return ws;
}

} // namespace

TEST_CASE("tree validation") {
    CHECK_THROWS_AS(PointedTree({1, 2}, {}, {{1, 1}}), Error);             // disconnected
    CHECK_THROWS_AS(PointedTree({1, 2}, {{1, 2}, {1, 2}}, {{1, 1}}), Error); // duplicate edge
    CHECK_THROWS_AS(PointedTree({1}, {{1, 1}}, {{1, 1}}), Error);          // loop
}

TEST_CASE("stability of pointed trees") {
    CHECK(check_stable_tree(one_vertex_tree(8)));
    CHECK(check_stable_tree(two_vertex_tree(6, 4)));
    CHECK_FALSE(check_stable_tree(two_vertex_tree(1, 9)));
    CHECK_FALSE(check_stable_tree(one_vertex_tree(2)));
}

TEST_CASE("central vertex of small trees") {
    auto t64 = two_vertex_tree(6, 4);
    auto c = central_vertex(t64);
    REQUIRE(c.has_value());
    CHECK(*c == 1); // the six-leg side

    CHECK_FALSE(central_vertex(two_vertex_tree(4, 4)).has_value());

    auto chain = chain_tree(3, 2, 3);
    auto mid = central_vertex(chain);
    REQUIRE(mid.has_value());
    CHECK(*mid == 2);
}

TEST_CASE("central edge of balanced trees") {
    CHECK(central_edge(two_vertex_tree(4, 4)) == make_edge(1, 2));
    CHECK(central_edge(chain_tree(2, 2, 4)) == make_edge(2, 3));
    CHECK_THROWS_AS(central_edge(two_vertex_tree(6, 4)), Error);
}

TEST_CASE("candidate parts enumerate vertices and adjacent pairs") {
    CHECK(candidate_parts(one_vertex_tree(8)).size() == 1);
    CHECK(candidate_parts(two_vertex_tree(6, 4)).size() == 3);
    CHECK(candidate_parts(chain_tree(3, 2, 3)).size() == 5);
    for (const auto& cand : candidate_parts(chain_tree(3, 2, 3))) {
        int total = 0;
        for (const auto& [v, d] : cand.twister.multidegree)
            total += d;
        CHECK(total == 2);
    }
}

TEST_CASE("anticanonical multidegree sums to two") {
    for (const auto& t : {one_vertex_tree(8), two_vertex_tree(6, 4), chain_tree(3, 2, 3)}) {
        int sum = 0;
        for (VertexId v : t.vertices())
            sum += 2 - t.degree(v);
        CHECK(sum == 2);
    }
}

TEST_CASE("abstract contraction weights always total the leg count") {
    for (const auto& t : {one_vertex_tree(8), two_vertex_tree(6, 4), two_vertex_tree(2, 8),
                          chain_tree(3, 2, 3), chain_tree(2, 2, 4)}) {
        for (const auto& cand : candidate_parts(t))
            CHECK(contract_to_conic(t, cand.support).abstract.total_weight() == t.leg_count());
    }
}

TEST_CASE("contraction of the (6,4) tree") {
    auto t = two_vertex_tree(6, 4);
    auto single = contract_to_conic(t, {1});
    CHECK(single.abstract.kind == AbstractMarkedConic::Kind::Smooth);
    CHECK(sorted_weights(single.abstract) == std::vector<Weight>{1, 1, 1, 1, 1, 1, 4});

    auto pair = contract_to_conic(t, {1, 2});
    CHECK(pair.abstract.kind == AbstractMarkedConic::Kind::TwoLine);
    CHECK(pair.abstract.component1 == std::vector<Weight>(6, 1));
    CHECK(pair.abstract.component2 == std::vector<Weight>(4, 1));

    auto mid = contract_to_conic(chain_tree(3, 2, 3), {2});
    CHECK(sorted_weights(mid.abstract) == std::vector<Weight>{1, 1, 3, 3});

    CHECK_THROWS_AS(contract_to_conic(chain_tree(3, 2, 3), {1, 3}), Error); // not adjacent
}

TEST_CASE("embedded contraction keeps the markings on the embedded conic") {
    auto t = with_default_coords(two_vertex_tree(6, 4));
    auto pair = contract_to_conic(t, {1, 2});
    REQUIRE(pair.embedded.has_value());
    CHECK(pair.embedded->conic() == Conic::two_axes());
    CHECK(pair.embedded->total_weight() == 10);

    auto single = contract_to_conic(t, {1});
    REQUIRE(single.embedded.has_value());
    CHECK(single.embedded->conic() == Conic::veronese_conic());
    // Branch marking of weight 4 at the edge coordinate.
    bool found = false;
    for (const auto& mk : single.embedded->markings())
        if (mk.weight == 4)
            found = true;
    CHECK(found);
}

TEST_CASE("principal parts of the (6,4) tree at g=4") {
    auto parts = principal_parts(two_vertex_tree(6, 4), 4);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].support == std::vector<VertexId>{1});
    CHECK(parts[1].support == (std::vector<VertexId>{1, 2}));
    CHECK(parts[0].verdict.status == Status::StrictlySemistable);
    CHECK(parts[1].verdict.status == Status::StrictlySemistable);
}

TEST_CASE("principal parts of the one-vertex tree at g=3") {
    auto parts = principal_parts(one_vertex_tree(8), 3);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].support == std::vector<VertexId>{1});
    CHECK(parts[0].verdict.status == Status::Stable);
}

TEST_CASE("principal parts of the (4,4) tree at g=3") {
    auto parts = principal_parts(two_vertex_tree(4, 4), 3);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].support == (std::vector<VertexId>{1, 2}));
    CHECK(parts[0].verdict.semistable());
}

TEST_CASE("every stable tree with at most two vertices has a principal part") {
    for (int m : {8, 10, 12}) {
        int g = (m - 2) / 2;
        CHECK_FALSE(principal_parts(one_vertex_tree(m), g).empty());
        for (int a = 2; a <= m - 2; ++a)
            CHECK_FALSE(principal_parts(two_vertex_tree(a, m - a), g).empty());
    }
}

TEST_CASE("forget_leg keeps stable trees stable") {
    // (3,5): forgetting on the 3 side leaves (2,5), still stable.
    auto t = two_vertex_tree(3, 5);
    auto t2 = forget_leg(t, 1);
    CHECK(t2.vertices().size() == 2);
    CHECK(t2.leg_count() == 7);
    CHECK(check_stable_tree(t2));

    // (2,6): forgetting on the 2 side contracts the first vertex.
    auto t3 = forget_leg(two_vertex_tree(2, 6), 1);
    CHECK(t3.vertices().size() == 1);
    CHECK(t3.leg_count() == 7);
    CHECK(check_stable_tree(t3));

    // One vertex with four legs.
    auto t4 = forget_leg(one_vertex_tree(4), 4);
    CHECK(t4.vertices().size() == 1);
    CHECK(t4.leg_count() == 3);

    CHECK_THROWS_AS(forget_leg(one_vertex_tree(3), 1), Error);
}

TEST_CASE("forget_leg matches the contraction criterion case by case") {
    // The component of the forgotten leg contracts exactly when its
    // remaining special points number at most two.
    for (int a = 2; a <= 6; ++a) {
        auto t = two_vertex_tree(a, 10 - a);
        auto after = forget_leg(t, 1); // leg 1 sits on vertex 1
        int special_left = (a - 1) + 1;
        if (special_left <= 2)
            CHECK(after.vertices().size() == 1);
        else
            CHECK(after.vertices().size() == 2);
        CHECK(check_stable_tree(after));
    }
}

TEST_CASE("forget_leg transports coordinates through contractions") {
    // Middle vertex of the chain has one leg; forgetting it splices the two
    // edges and the neighbors keep their attachment coordinates.
    auto t = with_default_coords(chain_tree(4, 1, 3));
    P1Point at1 = t.coord_at(1, Slot::for_edge(make_edge(1, 2)));
    P1Point at3 = t.coord_at(3, Slot::for_edge(make_edge(2, 3)));
    auto after = forget_leg(t, 5); // the middle leg
    CHECK(after.vertices().size() == 2);
    CHECK(after.coord_at(1, Slot::for_edge(make_edge(1, 3))) == at1);
    CHECK(after.coord_at(3, Slot::for_edge(make_edge(1, 3))) == at3);

    // Contraction of a vertex with one remaining leg moves that leg to the
    // neighbor at the old attachment point.
    auto s = with_default_coords(two_vertex_tree(2, 6));
    P1Point attach = s.coord_at(2, Slot::for_edge(make_edge(1, 2)));
    auto after2 = forget_leg(s, 1);
    CHECK(after2.vertices() == std::vector<VertexId>{2});
    CHECK(after2.coord_at(2, Slot::for_leg(2)) == attach);
}

TEST_CASE("exhaustive: central vertex versus balanced edge on small trees") {
    // All labeled trees with up to 3 vertices and m = 8 legs.
    for (int m : {8}) {
        // One vertex.
        CHECK(central_vertex(one_vertex_tree(m)).has_value());
        // Two vertices.
        for (int a = 2; a <= m - 2; ++a) {
            auto t = two_vertex_tree(a, m - a);
            bool balanced = (2 * a == m);
            CHECK(central_vertex(t).has_value() == !balanced);
        }
        // Chains of three.
        for (int a = 2; a <= m; ++a)
            for (int b = 0; a + b <= m; ++b) {
                int c = m - a - b;
                if (c < 2 || b < 1)
                    continue;
                auto t = chain_tree(a, b, c);
                if (!check_stable_tree(t))
                    continue;
                bool split1 = 2 * a == m;
                bool split2 = 2 * c == m;
                CHECK(central_vertex(t).has_value() == (!split1 && !split2));
            }
    }
}
