#include "coniclines/stable_trees.hpp"

#include <algorithm>

namespace coniclines {

PointedTree::PointedTree(std::vector<VertexId> vertices, std::vector<Edge> edges,
                         std::map<LegLabel, VertexId> legs, std::optional<Coords> coords)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), legs_(std::move(legs)),
      coords_(std::move(coords)) {
    if (vertices_.empty())
        fail(ErrorCode::not_a_tree, "tree needs at least one vertex");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        fail(ErrorCode::not_a_tree, "duplicate vertex ids");
    auto known = [&](VertexId v) {
        return std::binary_search(vertices_.begin(), vertices_.end(), v);
    };
    for (auto& e : edges_) {
        e = make_edge(e.first, e.second);
        if (e.first == e.second || !known(e.first) || !known(e.second))
            fail(ErrorCode::not_a_tree, "edge endpoints must be distinct known vertices");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        fail(ErrorCode::not_a_tree, "duplicate edges");
    if (edges_.size() + 1 != vertices_.size())
        fail(ErrorCode::not_a_tree, "a tree has exactly |V|-1 edges");
    // Connectivity: walk from the first vertex.
    std::set<VertexId> seen{vertices_.front()};
    std::vector<VertexId> stack{vertices_.front()};
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (const auto& e : edges_) {
            VertexId other = e.first == v ? e.second : e.second == v ? e.first : v;
            if (other != v && seen.insert(other).second)
                stack.push_back(other);
        }
    }
    if (seen.size() != vertices_.size())
        fail(ErrorCode::not_a_tree, "tree must be connected");
    for (const auto& [label, v] : legs_) {
        if (label <= 0)
            fail(ErrorCode::invalid_argument, "leg labels must be positive");
        if (!known(v))
            fail(ErrorCode::invalid_argument, "leg attached to an unknown vertex");
    }
    if (coords_) {
        for (VertexId v : vertices_) {
            auto it = coords_->find(v);
            if (it == coords_->end())
                fail(ErrorCode::missing_coords, "coordinates missing for a vertex");
            std::map<Slot, P1Point> expected;
            std::set<P1Point> values;
            for (LegLabel l : leg_labels_at(v))
                expected.emplace(Slot::for_leg(l), P1Point(0, 1));
            for (const auto& e : edges_)
                if (e.first == v || e.second == v)
                    expected.emplace(Slot::for_edge(e), P1Point(0, 1));
            if (it->second.size() != expected.size())
                fail(ErrorCode::missing_coords, "vertex coordinates must cover all slots");
            for (const auto& [slot, pt] : it->second) {
                if (expected.find(slot) == expected.end())
                    fail(ErrorCode::invalid_argument, "coordinate on a slot the vertex does not have");
                if (!values.insert(pt).second)
                    fail(ErrorCode::invalid_argument, "vertex coordinates must be injective");
            }
        }
    }
}

const PointedTree::Coords& PointedTree::coords() const {
    if (!coords_)
        fail(ErrorCode::missing_coords, "tree has no coordinates");
    return *coords_;
}

int PointedTree::degree(VertexId v) const {
    int d = 0;
    for (const auto& e : edges_)
        if (e.first == v || e.second == v)
            ++d;
    return d;
}

int PointedTree::legs_at(VertexId v) const {
    int n = 0;
    for (const auto& [label, at] : legs_)
        if (at == v)
            ++n;
    return n;
}

std::vector<VertexId> PointedTree::neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (const auto& e : edges_) {
        if (e.first == v)
            out.push_back(e.second);
        else if (e.second == v)
            out.push_back(e.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LegLabel> PointedTree::leg_labels_at(VertexId v) const {
    std::vector<LegLabel> out;
    for (const auto& [label, at] : legs_)
        if (at == v)
            out.push_back(label);
    return out;
}

std::vector<VertexId> PointedTree::component_without(VertexId removed, VertexId start) const {
    std::set<VertexId> seen{start};
    std::vector<VertexId> stack{start};
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId n : neighbors(v))
            if (n != removed && seen.insert(n).second)
                stack.push_back(n);
    }
    return std::vector<VertexId>(seen.begin(), seen.end());
}

std::pair<int, int> PointedTree::edge_split(const Edge& e) const {
    auto side = component_without(e.second, e.first);
    int w1 = 0;
    for (VertexId v : side)
        w1 += legs_at(v);
    return {w1, leg_count() - w1};
}

const P1Point& PointedTree::coord_at(VertexId v, const Slot& slot) const {
    const auto& cs = coords();
    auto vit = cs.find(v);
    if (vit == cs.end())
        fail(ErrorCode::missing_coords, "no coordinates at the vertex");
    auto sit = vit->second.find(slot);
    if (sit == vit->second.end())
        fail(ErrorCode::missing_coords, "no coordinate for the slot");
    return sit->second;
}

bool check_stable_tree(const PointedTree& t) {
    for (VertexId v : t.vertices())
        if (t.legs_at(v) + t.degree(v) < 3)
            return false;
    return true;
}

std::optional<VertexId> central_vertex(const PointedTree& t) {
    const int m = t.leg_count();
    for (VertexId v : t.vertices()) {
        bool central = true;
        for (VertexId n : t.neighbors(v)) {
            int w = 0;
            for (VertexId u : t.component_without(v, n))
                w += t.legs_at(u);
            if (2 * w >= m) {
                central = false;
                break;
            }
        }
        if (central)
            return v;
    }
    return std::nullopt;
}

Edge central_edge(const PointedTree& t) {
    if (central_vertex(t))
        fail(ErrorCode::has_central_vertex, "central edge undefined when a central vertex exists");
    const int m = t.leg_count();
    for (const auto& e : t.edges()) {
        auto [w1, w2] = t.edge_split(e);
        if (2 * w1 == m && 2 * w2 == m)
            return e;
    }
    fail(ErrorCode::invalid_argument, "no balanced edge found");
}

std::vector<CandidatePart> candidate_parts(const PointedTree& t) {
    std::vector<CandidatePart> out;
    for (VertexId v : t.vertices()) {
        Twister tw;
        tw.multidegree[v] = 2;
        out.push_back({{v}, tw});
    }
    for (const auto& e : t.edges()) {
        Twister tw;
        tw.multidegree[e.first] = 1;
        tw.multidegree[e.second] = 1;
        out.push_back({{e.first, e.second}, tw});
    }
    return out;
}

namespace {

// Branch data at a vertex: for each neighbor not inside the part, the total
// number of legs hanging on that side.
struct BranchWeights {
    std::vector<LegLabel> legs;                 // legs directly at the vertex
    std::vector<std::pair<VertexId, int>> branches; // neighbor -> leg total
};

BranchWeights branches_at(const PointedTree& t, VertexId v, const std::vector<VertexId>& part) {
    BranchWeights out;
    out.legs = t.leg_labels_at(v);
    for (VertexId n : t.neighbors(v)) {
        if (std::find(part.begin(), part.end(), n) != part.end())
            continue;
        int w = 0;
        for (VertexId u : t.component_without(v, n))
            w += t.legs_at(u);
        out.branches.emplace_back(n, w);
    }
    return out;
}

// Projectivity of P^1 sending e to (0:1), applied to x.
P1Point send_to_zero_slot(const P1Point& e, const P1Point& x) {
    // Rows of the 2x2 matrix: (e_b, -e_a) kills e; the second row keeps the
    // map invertible.
    Int a, b;
    if (sgn(e.b()) != 0) {
        a = e.b() * x.a() - e.a() * x.b();
        b = x.b();
    } else {
        a = -e.a() * x.b();
        b = x.a();
    }
    return P1Point(std::move(a), std::move(b));
}

} // namespace

Contraction contract_to_conic(const PointedTree& t, const std::vector<VertexId>& part) {
    auto sorted = part;
    std::sort(sorted.begin(), sorted.end());
    bool valid = false;
    for (const auto& cand : candidate_parts(t))
        if (cand.support == sorted) {
            valid = true;
            break;
        }
    if (!valid)
        fail(ErrorCode::invalid_part, "part must be a vertex or an adjacent pair");

    Contraction out;
    if (sorted.size() == 1) {
        VertexId v = sorted[0];
        BranchWeights bw = branches_at(t, v, sorted);
        std::vector<Weight> weights(bw.legs.size(), 1);
        for (const auto& [n, w] : bw.branches)
            weights.push_back(w);
        out.abstract = AbstractMarkedConic::smooth(weights);
        if (t.has_coords()) {
            std::vector<Marking> markings;
            for (LegLabel l : bw.legs)
                markings.push_back({veronese(t.coord_at(v, Slot::for_leg(l))), 1});
            for (const auto& [n, w] : bw.branches)
                markings.push_back({veronese(t.coord_at(v, Slot::for_edge(make_edge(v, n)))), w});
            out.embedded = MarkedConic(Conic::veronese_conic(), std::move(markings));
        }
    } else {
        VertexId v1 = sorted[0], v2 = sorted[1];
        BranchWeights b1 = branches_at(t, v1, sorted);
        BranchWeights b2 = branches_at(t, v2, sorted);
        auto collect = [](const BranchWeights& b) {
            std::vector<Weight> ws(b.legs.size(), 1);
            for (const auto& [n, w] : b.branches)
                ws.push_back(w);
            return ws;
        };
        out.abstract = AbstractMarkedConic::two_line(collect(b1), collect(b2));
        if (t.has_coords()) {
            Edge joint = make_edge(v1, v2);
            std::vector<Marking> markings;
            // Component of v1 onto x = 0 as (0:a:b), component of v2 onto
            // y = 0 as (a:0:b); the joint edge goes to the node (0:0:1).
            auto place = [&](VertexId v, const BranchWeights& bw, bool first_component) {
                P1Point edge_coord = t.coord_at(v, Slot::for_edge(joint));
                auto embed = [&](const P1Point& raw, Weight w) {
                    P1Point s = send_to_zero_slot(edge_coord, raw);
                    markings.push_back({first_component
                                            ? ProjectivePoint(Int(0), s.a(), s.b())
                                            : ProjectivePoint(s.a(), Int(0), s.b()),
                                        w});
                };
                for (LegLabel l : bw.legs)
                    embed(t.coord_at(v, Slot::for_leg(l)), 1);
                for (const auto& [n, w] : bw.branches)
                    embed(t.coord_at(v, Slot::for_edge(make_edge(v, n))), w);
            };
            place(v1, b1, true);
            place(v2, b2, false);
            out.embedded = MarkedConic(Conic::two_axes(), std::move(markings));
        }
    }
    return out;
}

std::vector<PrincipalPart> principal_parts(const PointedTree& t, int g, std::uint64_t seed) {
    if (t.leg_count() != 2 * g + 2)
        fail(ErrorCode::invalid_argument, "tree must carry 2g+2 legs");
    if (!check_stable_tree(t))
        fail(ErrorCode::invalid_argument, "tree must be stable");
    std::vector<PrincipalPart> out;
    for (const auto& cand : candidate_parts(t)) {
        Contraction c = contract_to_conic(t, cand.support);
        MarkedConic realized = generic_realize(c.abstract, seed);
        StabilityVerdict v = config_verdict(psi(realized));
        if (v.semistable())
            out.push_back({cand.support, cand.twister, v});
    }
    return out;
}

PointedTree forget_leg(const PointedTree& t, LegLabel label) {
    if (t.leg_count() < 4)
        fail(ErrorCode::too_few_legs, "forgetting a leg needs at least four");
    auto legs = t.legs();
    auto it = legs.find(label);
    if (it == legs.end())
        fail(ErrorCode::invalid_argument, "no such leg");
    VertexId v = it->second;
    legs.erase(it);

    auto vertices = t.vertices();
    auto edges = t.edges();
    std::optional<PointedTree::Coords> coords;
    if (t.has_coords()) {
        coords = t.coords();
        (*coords)[v].erase(Slot::for_leg(label));
    }

    int special = t.legs_at(v) - 1 + t.degree(v);
    if (special >= 3)
        return PointedTree(vertices, edges, legs, coords);

    // The vertex drops below stability and is contracted. After removing the
    // leg it carries exactly two special points.
    auto nbrs = t.neighbors(v);
    if (nbrs.empty())
        return PointedTree(vertices, edges, legs, coords); // single vertex, still fine

    VertexId a = nbrs[0];
    vertices.erase(std::remove(vertices.begin(), vertices.end(), v), vertices.end());
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [&](const Edge& e) { return e.first == v || e.second == v; }),
                edges.end());

    if (nbrs.size() == 2) {
        // Two edges: splice them into one.
        VertexId b = nbrs[1];
        Edge merged = make_edge(a, b);
        edges.push_back(merged);
        if (coords) {
            auto& ca = (*coords)[a];
            auto na = ca.extract(Slot::for_edge(make_edge(a, v)));
            ca.emplace(Slot::for_edge(merged), na.mapped());
            auto& cb = (*coords)[b];
            auto nb = cb.extract(Slot::for_edge(make_edge(b, v)));
            cb.emplace(Slot::for_edge(merged), nb.mapped());
            coords->erase(v);
        }
    } else {
        // One edge and one remaining leg: the leg moves to the neighbor at
        // the attachment point of the contracted component.
        auto rest = t.leg_labels_at(v);
        rest.erase(std::remove(rest.begin(), rest.end(), label), rest.end());
        if (rest.size() != 1)
            fail(ErrorCode::invalid_argument, "unexpected contraction shape");
        LegLabel moved = rest.front();
        legs[moved] = a;
        if (coords) {
            auto& ca = (*coords)[a];
            auto na = ca.extract(Slot::for_edge(make_edge(a, v)));
            ca.emplace(Slot::for_leg(moved), na.mapped());
            coords->erase(v);
        }
    }
    return PointedTree(vertices, edges, legs, coords);
}

} // namespace coniclines
