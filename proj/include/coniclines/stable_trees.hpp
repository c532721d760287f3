#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "coniclines/marked_conic.hpp"
#include "coniclines/projective.hpp"
#include "coniclines/stability.hpp"

namespace coniclines {

using VertexId = int;
using LegLabel = int;
using Edge = std::pair<VertexId, VertexId>; // stored with first < second

inline Edge make_edge(VertexId a, VertexId b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

// A slot at a vertex where the curve has a special point: a labelled leg or
// the attachment of an edge.
struct Slot {
    enum class Kind { Leg, Edge };
    Kind kind;
    LegLabel leg = 0;
    Edge edge{0, 0};

    static Slot for_leg(LegLabel l) { return Slot{Kind::Leg, l, {0, 0}}; }
    static Slot for_edge(Edge e) { return Slot{Kind::Edge, 0, e}; }

    friend bool operator<(const Slot& a, const Slot& b) {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        if (a.kind == Kind::Leg)
            return a.leg < b.leg;
        return a.edge < b.edge;
    }
    friend bool operator==(const Slot& a, const Slot& b) {
        return a.kind == b.kind && a.leg == b.leg && a.edge == b.edge;
    }
};

// Dual tree of a pointed nodal curve of genus zero: vertices are components,
// edges are nodes, legs are the marked points. Coordinates, when present,
// give each vertex an injective map from its slots to points of P^1.
class PointedTree {
public:
    using Coords = std::map<VertexId, std::map<Slot, P1Point>>;

    PointedTree(std::vector<VertexId> vertices, std::vector<Edge> edges,
                std::map<LegLabel, VertexId> legs, std::optional<Coords> coords = std::nullopt);

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::map<LegLabel, VertexId>& legs() const { return legs_; }
    bool has_coords() const { return coords_.has_value(); }
    const Coords& coords() const;

    int leg_count() const { return static_cast<int>(legs_.size()); }
    int degree(VertexId v) const;
    int legs_at(VertexId v) const;
    std::vector<VertexId> neighbors(VertexId v) const;
    std::vector<LegLabel> leg_labels_at(VertexId v) const;

    // Vertices of the component of `start` in the tree with `removed` deleted.
    std::vector<VertexId> component_without(VertexId removed, VertexId start) const;
    // Leg weights of the two sides of an edge (in the order of the edge pair).
    std::pair<int, int> edge_split(const Edge& e) const;

    const P1Point& coord_at(VertexId v, const Slot& slot) const;

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::map<LegLabel, VertexId> legs_;
    std::optional<Coords> coords_;
};

// Multidegree summing to 2 whose positive support is one vertex or two
// adjacent ones.
struct Twister {
    std::map<VertexId, int> multidegree;
};

// A candidate contraction target: one vertex or an adjacent pair, with the
// twister realizing it.
struct CandidatePart {
    std::vector<VertexId> support; // sorted, size 1 or 2
    Twister twister;
};

struct PrincipalPart {
    std::vector<VertexId> support;
    Twister twister;
    StabilityVerdict verdict;
};

// Stability of the pointed curve: every vertex carries at least three
// special points. Throws NotATree on disconnected or cyclic input (checked at
// construction, so this only re-validates the leg condition).
bool check_stable_tree(const PointedTree& t);

// The unique vertex all of whose complementary branches carry < m/2 legs;
// absent exactly when some edge splits the legs m/2 - m/2.
std::optional<VertexId> central_vertex(const PointedTree& t);

// The unique m/2 - m/2 edge; only defined when there is no central vertex.
Edge central_edge(const PointedTree& t);

// All single vertices (degree 2 there) and adjacent pairs (degree 1 and 1).
std::vector<CandidatePart> candidate_parts(const PointedTree& t);

struct Contraction {
    AbstractMarkedConic abstract;
    std::optional<MarkedConic> embedded; // present when the tree has coords
};

// Contracts everything outside the part onto the conic realized by the part:
// legs on the part become weight-1 markings, each hanging branch becomes one
// marking weighted by its leg total. With coordinates, the part is embedded
// as y^2 = xz (single vertex, via the Veronese) or xy = 0 (pair, components
// onto x = 0 and y = 0 with the connecting edge at the node).
Contraction contract_to_conic(const PointedTree& t, const std::vector<VertexId>& part);

// Candidates whose contraction, realized certified-generically, has a
// semistable configuration of lines. The verdicts do not depend on the
// realization seed (the certificate pins the coincidence pattern).
std::vector<PrincipalPart> principal_parts(const PointedTree& t, int g, std::uint64_t seed = 0);

// Forgetful map: removes the leg and contracts its vertex if it drops below
// stability (two or fewer special points left), transporting coordinates
// along the identification of the attachment point.
PointedTree forget_leg(const PointedTree& t, LegLabel label);

} // namespace coniclines
