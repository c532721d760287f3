#include "coniclines/marked_conic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coniclines/rng.hpp"

namespace coniclines {

MarkedConic::MarkedConic(Conic conic, std::vector<Marking> markings)
    : conic_(std::move(conic)), markings_(std::move(markings)) {
    if (markings_.empty())
        fail(ErrorCode::invalid_argument, "marked conic needs at least one marking");
    std::sort(markings_.begin(), markings_.end());
    for (size_t i = 0; i < markings_.size(); ++i) {
        const auto& mk = markings_[i];
        if (mk.weight <= 0)
            fail(ErrorCode::invalid_argument, "marking weights must be positive");
        if (i > 0 && mk.point == markings_[i - 1].point)
            fail(ErrorCode::invalid_argument, "marking points must be distinct");
        if (!conic_.contains(mk.point))
            fail(ErrorCode::invalid_argument, "marking " + mk.point.str() + " is not on the conic");
        if (conic_.rank() == 2 && mk.point == conic_.node())
            fail(ErrorCode::invalid_argument, "markings may not sit at the node");
        total_ += mk.weight;
    }
    if (total_ < 2)
        fail(ErrorCode::invalid_argument, "total marking weight must be at least 2");
}

void LineConfig::add(const ProjectiveLine& line, Mult mult) {
    if (mult <= 0)
        fail(ErrorCode::invalid_argument, "line multiplicities must be positive");
    entries_[line] += mult;
    total_ += mult;
}

Mult LineConfig::mu_line(const ProjectiveLine& line) const {
    auto it = entries_.find(line);
    return it == entries_.end() ? 0 : it->second;
}

std::vector<Mult> LineConfig::multiplicity_multiset() const {
    std::vector<Mult> out;
    out.reserve(entries_.size());
    for (const auto& [line, mult] : entries_)
        out.push_back(mult);
    std::sort(out.begin(), out.end());
    return out;
}

LineConfig psi(const MarkedConic& k) {
    LineConfig r;
    const auto& ms = k.markings();
    for (size_t i = 0; i < ms.size(); ++i) {
        for (size_t j = i + 1; j < ms.size(); ++j)
            r.add(line_through(ms[i].point, ms[j].point), ms[i].weight * ms[j].weight);
        if (ms[i].weight >= 2)
            r.add(tangent_at(k.conic(), ms[i].point), binom2(ms[i].weight));
    }
    return r;
}

AbstractMarkedConic AbstractMarkedConic::smooth(std::vector<Weight> weights) {
    AbstractMarkedConic a;
    a.kind = Kind::Smooth;
    a.weights = std::move(weights);
    std::sort(a.weights.begin(), a.weights.end());
    a.validate();
    return a;
}

AbstractMarkedConic AbstractMarkedConic::two_line(std::vector<Weight> c1, std::vector<Weight> c2) {
    AbstractMarkedConic a;
    a.kind = Kind::TwoLine;
    a.component1 = std::move(c1);
    a.component2 = std::move(c2);
    std::sort(a.component1.begin(), a.component1.end());
    std::sort(a.component2.begin(), a.component2.end());
    a.validate();
    return a;
}

Weight AbstractMarkedConic::total_weight() const {
    Weight t = 0;
    for (Weight w : weights)
        t += w;
    for (Weight w : component1)
        t += w;
    for (Weight w : component2)
        t += w;
    return t;
}

void AbstractMarkedConic::validate() const {
    auto check_positive = [](const std::vector<Weight>& ws) {
        for (Weight w : ws)
            if (w <= 0)
                fail(ErrorCode::invalid_argument, "weights must be positive");
    };
    if (kind == Kind::Smooth) {
        if (weights.empty() || !component1.empty() || !component2.empty())
            fail(ErrorCode::invalid_argument, "smooth profile uses the single weight list");
        check_positive(weights);
    } else {
        if (!weights.empty())
            fail(ErrorCode::invalid_argument, "two-line profile uses the component lists");
        if (component1.empty() && component2.empty())
            fail(ErrorCode::invalid_argument, "two-line profile needs a nonempty component");
        check_positive(component1);
        check_positive(component2);
    }
    if (total_weight() < 2)
        fail(ErrorCode::invalid_argument, "total weight must be at least 2");
}

PredictedPattern predicted_pattern(const AbstractMarkedConic& a) {
    a.validate();
    PredictedPattern p;
    if (a.kind == AbstractMarkedConic::Kind::Smooth) {
        const auto& w = a.weights;
        Weight m = a.total_weight();
        for (size_t i = 0; i < w.size(); ++i) {
            for (size_t j = i + 1; j < w.size(); ++j)
                p.line_multiplicities.push_back(w[i] * w[j]);
            if (w[i] >= 2)
                p.line_multiplicities.push_back(binom2(w[i]));
            p.mu_by_weight[w[i]] = w[i] * (m - w[i]) + binom2(w[i]);
        }
    } else {
        Weight m1 = 0, m2 = 0;
        for (Weight w : a.component1)
            m1 += w;
        for (Weight w : a.component2)
            m2 += w;
        if (m1 >= 2)
            p.line_multiplicities.push_back(binom2(m1));
        if (m2 >= 2)
            p.line_multiplicities.push_back(binom2(m2));
        for (Weight wi : a.component1)
            for (Weight wj : a.component2)
                p.line_multiplicities.push_back(wi * wj);
        for (Weight w : a.component1)
            p.mu_component1[w] = binom2(m1) + w * m2;
        for (Weight w : a.component2)
            p.mu_component2[w] = binom2(m2) + w * m1;
        p.mu_node = binom2(m1) + binom2(m2);
    }
    std::sort(p.line_multiplicities.begin(), p.line_multiplicities.end());
    return p;
}

bool concurrences_only_at(const LineConfig& r, const std::vector<ProjectivePoint>& special) {
    std::vector<ProjectiveLine> lines;
    lines.reserve(r.distinct_count());
    for (const auto& [line, mult] : r.entries())
        lines.push_back(line);
    std::set<ProjectivePoint> seen;
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j) {
            ProjectivePoint p = intersect_lines(lines[i], lines[j]);
            if (!seen.insert(p).second)
                continue;
            int count = 0;
            for (const auto& l : lines)
                if (incident(p, l) && ++count >= 3)
                    break;
            if (count >= 3
                && std::find(special.begin(), special.end(), p) == special.end())
                return false;
        }
    return true;
}

namespace {

std::vector<Int> draw_distinct(SplitMix64& rng, size_t count, std::int64_t radius) {
    std::set<std::int64_t> used;
    std::vector<Int> out;
    while (out.size() < count) {
        std::int64_t v = rng.range(-radius, radius);
        if (used.insert(v).second)
            out.emplace_back(v);
    }
    return out;
}

std::uint64_t profile_salt(const AbstractMarkedConic& a) {
    std::uint64_t h = a.kind == AbstractMarkedConic::Kind::Smooth ? 0x517cc1b727220a95ULL : 0x2545f4914f6cdd1dULL;
    auto mix = [&h](std::uint64_t v) { h = (h ^ v) * 0x100000001b3ULL; };
    for (Weight w : a.weights)
        mix(static_cast<std::uint64_t>(w) + 1);
    mix(0xffULL);
    for (Weight w : a.component1)
        mix(static_cast<std::uint64_t>(w) + 1);
    mix(0xffULL);
    for (Weight w : a.component2)
        mix(static_cast<std::uint64_t>(w) + 1);
    return h;
}

} // namespace

MarkedConic generic_realize(const AbstractMarkedConic& a, std::uint64_t seed, int max_attempts) {
    a.validate();
    PredictedPattern want = predicted_pattern(a);
    const Weight m = a.total_weight();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + profile_salt(a) + static_cast<std::uint64_t>(attempt));
        std::int64_t radius = 4 * static_cast<std::int64_t>(m) + 8 * (attempt + 1);

        std::vector<Marking> markings;
        Conic conic = Conic::veronese_conic();
        std::vector<ProjectivePoint> special;
        if (a.kind == AbstractMarkedConic::Kind::Smooth) {
            auto params = draw_distinct(rng, a.weights.size(), radius);
            for (size_t i = 0; i < a.weights.size(); ++i)
                markings.push_back({veronese(P1Point(params[i], 1)), a.weights[i]});
        } else {
            conic = Conic::two_axes();
            // Component x = 0 carries (0:1:t), component y = 0 carries
            // (1:0:t); both families avoid the node (0:0:1).
            auto p1 = draw_distinct(rng, a.component1.size(), radius);
            auto p2 = draw_distinct(rng, a.component2.size(), radius);
            for (size_t i = 0; i < a.component1.size(); ++i)
                markings.push_back({ProjectivePoint(Int(0), Int(1), p1[i]), a.component1[i]});
            for (size_t i = 0; i < a.component2.size(); ++i)
                markings.push_back({ProjectivePoint(Int(1), Int(0), p2[i]), a.component2[i]});
            special.push_back(conic.node());
        }
        MarkedConic k(conic, std::move(markings));
        for (const auto& mk : k.markings())
            special.push_back(mk.point);

        LineConfig r = psi(k);
        if (r.multiplicity_multiset() != want.line_multiplicities)
            continue;
        if (!concurrences_only_at(r, special))
            continue;
        return k;
    }
    std::ostringstream os;
    os << "no certified-generic realization within " << max_attempts << " attempts";
    fail(ErrorCode::genericity_exhausted, os.str());
}

} // namespace coniclines
