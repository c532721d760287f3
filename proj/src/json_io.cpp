#include "coniclines/json_io.hpp"

#include <string>

namespace coniclines {

namespace {

std::int64_t to_i64(const Int& x) {
    if (!x.fits_slong_p())
        fail(ErrorCode::invalid_argument, "coordinate too large for the JSON integer encoding");
    return x.get_si();
}

json triple_to_json(const Triple& t) {
    return json::array({to_i64(t[0]), to_i64(t[1]), to_i64(t[2])});
}

Triple triple_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3)
        fail(ErrorCode::invalid_argument, "expected a 3-element integer array");
    Triple t;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number_integer())
            fail(ErrorCode::invalid_argument, "expected integer coordinates");
        t[i] = Int(j[i].get<std::int64_t>());
    }
    return t;
}

json p1_to_json(const P1Point& p) {
    return json::array({p.a().get_str(), p.b().get_str()});
}

P1Point p1_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        fail(ErrorCode::invalid_argument, "expected a 2-element string array for a P1 point");
    try {
        return P1Point(Int(j[0].get<std::string>()), Int(j[1].get<std::string>()));
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::invalid_argument, "malformed P1 point");
    }
}

} // namespace

json point_to_json(const ProjectivePoint& p) {
    return triple_to_json(p.coords());
}

ProjectivePoint point_from_json(const json& j) {
    return ProjectivePoint(triple_from_json(j));
}

json line_to_json(const ProjectiveLine& l) {
    return triple_to_json(l.coeffs());
}

ProjectiveLine line_from_json(const json& j) {
    return ProjectiveLine(triple_from_json(j));
}

json conic_to_json(const Conic& c) {
    json a = json::array();
    for (const auto& x : c.coeffs())
        a.push_back(to_i64(x));
    return a;
}

Conic conic_from_json(const json& j) {
    if (!j.is_array() || j.size() != 6)
        fail(ErrorCode::invalid_argument, "expected 6 conic coefficients");
    ConicCoeffs c;
    for (int i = 0; i < 6; ++i) {
        if (!j[i].is_number_integer())
            fail(ErrorCode::invalid_argument, "expected integer conic coefficients");
        c[i] = Int(j[i].get<std::int64_t>());
    }
    return Conic::classify(c);
}

json marked_conic_to_json(const MarkedConic& k) {
    json markings = json::array();
    for (const auto& mk : k.markings())
        markings.push_back({{"point", point_to_json(mk.point)}, {"weight", mk.weight}});
    return {{"conic", conic_to_json(k.conic())}, {"markings", markings}};
}

MarkedConic marked_conic_from_json(const json& j) {
    if (!j.is_object() || !j.contains("conic") || !j.contains("markings"))
        fail(ErrorCode::invalid_argument, "marked conic needs \"conic\" and \"markings\"");
    Conic c = conic_from_json(j["conic"]);
    std::vector<Marking> ms;
    for (const auto& entry : j["markings"]) {
        if (!entry.contains("point") || !entry.contains("weight")
            || !entry["weight"].is_number_integer())
            fail(ErrorCode::invalid_argument, "marking needs \"point\" and integer \"weight\"");
        ms.push_back({point_from_json(entry["point"]), entry["weight"].get<Weight>()});
    }
    return MarkedConic(std::move(c), std::move(ms));
}

json line_config_to_json(const LineConfig& r) {
    json out = json::array();
    for (const auto& [line, mult] : r.entries())
        out.push_back({{"line", line_to_json(line)}, {"mult", mult}});
    return out;
}

LineConfig line_config_from_json(const json& j) {
    if (!j.is_array())
        fail(ErrorCode::invalid_argument, "line configuration must be an array");
    LineConfig r;
    for (const auto& entry : j) {
        if (!entry.contains("line") || !entry.contains("mult")
            || !entry["mult"].is_number_integer())
            fail(ErrorCode::invalid_argument, "entry needs \"line\" and integer \"mult\"");
        r.add(line_from_json(entry["line"]), entry["mult"].get<Mult>());
    }
    return r;
}

json verdict_to_json(const StabilityVerdict& v) {
    json witness;
    if (std::holds_alternative<ProjectivePoint>(v.witness))
        witness = {{"type", "point"}, {"coords", point_to_json(std::get<ProjectivePoint>(v.witness))}};
    else if (std::holds_alternative<ProjectiveLine>(v.witness))
        witness = {{"type", "line"}, {"coords", line_to_json(std::get<ProjectiveLine>(v.witness))}};
    else
        witness = {{"type", "root"}, {"point", p1_to_json(std::get<P1Point>(v.witness))}};
    return {{"status", to_string(v.status)},
            {"witness", witness},
            {"mu", rational_to_string(v.mu)},
            {"threshold", rational_to_string(v.threshold)}};
}

json binary_form_to_json(const BinaryForm& b) {
    json roots = json::array();
    for (const auto& [pt, w] : b.roots())
        roots.push_back({{"point", p1_to_json(pt)}, {"mult", w}});
    return {{"degree", b.degree()}, {"roots", roots}};
}

BinaryForm binary_form_from_json(const json& j) {
    if (!j.is_object() || !j.contains("roots"))
        fail(ErrorCode::invalid_argument, "binary form needs \"roots\"");
    std::vector<std::pair<P1Point, Weight>> roots;
    for (const auto& entry : j["roots"]) {
        if (!entry.contains("point") || !entry.contains("mult")
            || !entry["mult"].is_number_integer())
            fail(ErrorCode::invalid_argument, "root needs \"point\" and integer \"mult\"");
        roots.emplace_back(p1_from_json(entry["point"]), entry["mult"].get<Weight>());
    }
    BinaryForm b(std::move(roots));
    if (j.contains("degree") && j["degree"].get<Weight>() != b.degree())
        fail(ErrorCode::invalid_argument, "declared degree does not match the roots");
    return b;
}

namespace {

std::string slot_key(const Slot& s) {
    if (s.kind == Slot::Kind::Leg)
        return "leg:" + std::to_string(s.leg);
    return "edge:" + std::to_string(s.edge.first) + "-" + std::to_string(s.edge.second);
}

Slot slot_from_key(const std::string& key) {
    if (key.rfind("leg:", 0) == 0)
        return Slot::for_leg(std::stoi(key.substr(4)));
    if (key.rfind("edge:", 0) == 0) {
        auto dash = key.find('-', 5);
        if (dash != std::string::npos) {
            int a = std::stoi(key.substr(5, dash - 5));
            int b = std::stoi(key.substr(dash + 1));
            return Slot::for_edge(make_edge(a, b));
        }
    }
    fail(ErrorCode::invalid_argument, "malformed coordinate slot key: " + key);
}

std::string p1_value(const P1Point& p) {
    if (p.is_infinity())
        return "inf";
    Rational q = make_rational(p.a(), p.b());
    return rational_to_string(q);
}

P1Point p1_from_value(const std::string& s) {
    if (s == "inf")
        return P1Point::infinity();
    Rational q = rational_from_string(s);
    return P1Point::from_rational(q);
}

} // namespace

json tree_to_json(const PointedTree& t) {
    json legs = json::object();
    for (const auto& [label, v] : t.legs())
        legs[std::to_string(label)] = v;
    json edges = json::array();
    for (const auto& e : t.edges())
        edges.push_back(json::array({e.first, e.second}));
    json out = {{"vertices", t.vertices()}, {"edges", edges}, {"legs", legs}};
    if (t.has_coords()) {
        json coords = json::object();
        for (const auto& [v, slots] : t.coords()) {
            json entry = json::object();
            for (const auto& [slot, pt] : slots)
                entry[slot_key(slot)] = p1_value(pt);
            coords[std::to_string(v)] = entry;
        }
        out["coords"] = coords;
    }
    return out;
}

PointedTree tree_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") || !j.contains("legs"))
        fail(ErrorCode::invalid_argument, "tree needs \"vertices\", \"edges\" and \"legs\"");
    std::vector<VertexId> vertices;
    for (const auto& v : j["vertices"]) {
        if (!v.is_number_integer())
            fail(ErrorCode::invalid_argument, "vertex ids must be integers");
        vertices.push_back(v.get<VertexId>());
    }
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2)
            fail(ErrorCode::invalid_argument, "edges must be 2-element arrays");
        edges.push_back(make_edge(e[0].get<VertexId>(), e[1].get<VertexId>()));
    }
    std::map<LegLabel, VertexId> legs;
    for (const auto& [key, value] : j["legs"].items()) {
        try {
            legs[std::stoi(key)] = value.get<VertexId>();
        } catch (const std::exception&) {
            fail(ErrorCode::invalid_argument, "malformed leg label: " + key);
        }
    }
    std::optional<PointedTree::Coords> coords;
    if (j.contains("coords")) {
        PointedTree::Coords cs;
        for (const auto& [vkey, slots] : j["coords"].items()) {
            VertexId v = std::stoi(vkey);
            for (const auto& [skey, value] : slots.items())
                cs[v].emplace(slot_from_key(skey), p1_from_value(value.get<std::string>()));
        }
        coords = std::move(cs);
    }
    return PointedTree(std::move(vertices), std::move(edges), std::move(legs), std::move(coords));
}

json principal_parts_to_json(const std::vector<PrincipalPart>& parts) {
    json out = json::array();
    for (const auto& p : parts) {
        json deg = json::object();
        for (const auto& [v, d] : p.twister.multidegree)
            deg[std::to_string(v)] = d;
        out.push_back({{"support", p.support},
                       {"twister", deg},
                       {"verdict", verdict_to_json(p.verdict)}});
    }
    return out;
}

} // namespace coniclines
