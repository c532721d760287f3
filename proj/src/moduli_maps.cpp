#include "coniclines/moduli_maps.hpp"

#include <algorithm>

namespace coniclines {

BinaryFormClass f_map(const PointedTree& t, int g) {
    if (t.leg_count() != 2 * g + 2)
        fail(ErrorCode::invalid_argument, "tree must carry 2g+2 legs");
    if (!check_stable_tree(t))
        fail(ErrorCode::invalid_argument, "tree must be stable");

    auto center = central_vertex(t);
    if (!center) {
        // On the locus without a central vertex all images coincide with the
        // class of two (g+1)-fold roots.
        std::vector<std::pair<P1Point, Weight>> roots;
        roots.emplace_back(P1Point(0, 1), g + 1);
        roots.emplace_back(P1Point::infinity(), g + 1);
        return {BinaryForm(std::move(roots))};
    }
    if (!t.has_coords())
        fail(ErrorCode::missing_coords, "coordinates required at the central vertex");

    VertexId v = *center;
    std::vector<std::pair<P1Point, Weight>> roots;
    for (LegLabel l : t.leg_labels_at(v))
        roots.emplace_back(t.coord_at(v, Slot::for_leg(l)), 1);
    for (VertexId n : t.neighbors(v)) {
        int w = 0;
        for (VertexId u : t.component_without(v, n))
            w += t.legs_at(u);
        roots.emplace_back(t.coord_at(v, Slot::for_edge(make_edge(v, n))), w);
    }
    return {BinaryForm(std::move(roots))};
}

BinaryFormClass alpha(const LineConfig& r, int g) {
    const Weight m = 2 * static_cast<Weight>(g) + 2;
    MarkedConic k = reconstruct(r, m);

    // Normalize the support to y^2 = xz by the projectivity fixed on three
    // markings and the intersection of the tangents at the first two; those
    // four points are in general position and pin the conic map exactly.
    const auto& ms = k.markings();
    if (ms.size() < 3)
        fail(ErrorCode::not_in_v, "too few markings to normalize the conic");
    ProjectivePoint q1 = ms[0].point, q2 = ms[1].point, q3 = ms[2].point;
    ProjectivePoint n = intersect_lines(tangent_at(k.conic(), q1), tangent_at(k.conic(), q2));
    Mat3 to_std = projectivity_mapping(
        {q1, q2, n, q3},
        {ProjectivePoint(1, 0, 0), ProjectivePoint(0, 0, 1), ProjectivePoint(0, 1, 0),
         ProjectivePoint(1, 1, 1)});
    Conic image = k.conic().transformed(to_std);
    if (image != Conic::veronese_conic())
        fail(ErrorCode::not_in_v, "conic normalization failed");

    std::vector<std::pair<P1Point, Weight>> roots;
    for (const auto& mk : ms)
        roots.emplace_back(inverse_veronese(apply_to_point(to_std, mk.point)), mk.weight);
    return {BinaryForm(std::move(roots))};
}

LineConfig beta(const PointedTree& t, int g, std::uint64_t seed) {
    auto parts = principal_parts(t, g, seed);
    if (parts.empty())
        fail(ErrorCode::no_principal_part, "tree has no principal part");
    const PrincipalPart* chosen = nullptr;
    for (const auto& p : parts) {
        if (!chosen) {
            chosen = &p;
            continue;
        }
        if (p.support.size() != chosen->support.size()) {
            if (p.support.size() < chosen->support.size())
                chosen = &p;
            continue;
        }
        if (p.support < chosen->support)
            chosen = &p;
    }
    Contraction c = contract_to_conic(t, chosen->support);
    if (!c.embedded)
        fail(ErrorCode::missing_coords, "beta needs coordinates on the tree");
    return psi(*c.embedded);
}

namespace {

// 2x2 bracket [p, q] = p_a q_b - p_b q_a.
Int bracket(const P1Point& p, const P1Point& q) {
    return p.a() * q.b() - p.b() * q.a();
}

// The Moebius transformation sending (a, b, c) to (0, 1, infinity).
P1Point normalize_by_triple(const P1Point& x, const P1Point& a, const P1Point& b,
                            const P1Point& c) {
    Int num = bracket(x, a) * bracket(b, c);
    Int den = bracket(x, c) * bracket(b, a);
    return P1Point(std::move(num), std::move(den));
}

std::vector<std::pair<P1Point, Weight>> normalized_roots(const BinaryForm& f, const P1Point& a,
                                                         const P1Point& b, const P1Point& c) {
    std::vector<std::pair<P1Point, Weight>> out;
    for (const auto& [pt, w] : f.roots())
        out.emplace_back(normalize_by_triple(pt, a, b, c), w);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool mobius_equivalent(const BinaryForm& b1, const BinaryForm& b2) {
    if (b1.degree() != b2.degree())
        fail(ErrorCode::degree_mismatch, "forms must have equal degree");
    if (b1.multiplicity_profile() != b2.multiplicity_profile())
        return false;
    const auto& r1 = b1.roots();
    const auto& r2 = b2.roots();
    if (r2.size() <= 2) {
        // Any one or two points move to any other one or two by a Moebius
        // map, and matching profiles make the multiplicities line up.
        return true;
    }

    const P1Point &a2 = r2[0].first, &b2p = r2[1].first, &c2 = r2[2].first;
    const Weight wa = r2[0].second, wb = r2[1].second, wc = r2[2].second;
    auto target = normalized_roots(b2, a2, b2p, c2);

    for (size_t i = 0; i < r1.size(); ++i)
        for (size_t j = 0; j < r1.size(); ++j)
            for (size_t k = 0; k < r1.size(); ++k) {
                if (i == j || j == k || i == k)
                    continue;
                if (r1[i].second != wa || r1[j].second != wb || r1[k].second != wc)
                    continue;
                if (normalized_roots(b1, r1[i].first, r1[j].first, r1[k].first) == target)
                    return true;
            }
    return false;
}

bool factorization_check(const PointedTree& t, int g) {
    BinaryFormClass lhs = alpha(beta(t, g), g);
    BinaryFormClass rhs = f_map(t, g);
    return mobius_equivalent(lhs.form, rhs.form);
}

} // namespace coniclines
