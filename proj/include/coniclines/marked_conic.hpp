#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "coniclines/conic.hpp"
#include "coniclines/projective.hpp"

namespace coniclines {

using Weight = std::int64_t;
using Mult = std::int64_t;

struct Marking {
    ProjectivePoint point;
    Weight weight;

    friend bool operator==(const Marking& a, const Marking& b) {
        return a.point == b.point && a.weight == b.weight;
    }
    friend bool operator<(const Marking& a, const Marking& b) {
        if (a.point != b.point)
            return a.point < b.point;
        return a.weight < b.weight;
    }
};

// A conic with weighted markings: distinct smooth points with positive
// integer weights, total weight at least 2. Markings are kept sorted by
// canonical point order so equality is structural.
class MarkedConic {
public:
    MarkedConic(Conic conic, std::vector<Marking> markings);

    const Conic& conic() const { return conic_; }
    const std::vector<Marking>& markings() const { return markings_; }
    Weight total_weight() const { return total_; }

    friend bool operator==(const MarkedConic& a, const MarkedConic& b) {
        return a.conic_ == b.conic_ && a.markings_ == b.markings_;
    }
    friend bool operator!=(const MarkedConic& a, const MarkedConic& b) { return !(a == b); }

private:
    Conic conic_;
    std::vector<Marking> markings_;
    Weight total_ = 0;
};

// Multiset of lines with positive multiplicities, keyed by canonical form.
class LineConfig {
public:
    void add(const ProjectiveLine& line, Mult mult);

    Mult total() const { return total_; }
    Mult mu_line(const ProjectiveLine& line) const;
    size_t distinct_count() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const std::map<ProjectiveLine, Mult>& entries() const { return entries_; }

    std::vector<Mult> multiplicity_multiset() const; // sorted ascending

    friend bool operator==(const LineConfig& a, const LineConfig& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const LineConfig& a, const LineConfig& b) { return !(a == b); }

private:
    std::map<ProjectiveLine, Mult> entries_;
    Mult total_ = 0;
};

// The configuration-of-lines map: one line through every unordered pair of
// distinct markings with multiplicity w_i * w_j, plus the tangent at every
// marking of weight >= 2 with multiplicity binom(w, 2). Total multiplicity is
// binom(total weight, 2).
LineConfig psi(const MarkedConic& k);

// Abstract weighted marking data, before any choice of coordinates.
struct AbstractMarkedConic {
    enum class Kind { Smooth, TwoLine };

    Kind kind = Kind::Smooth;
    std::vector<Weight> weights;       // Smooth
    std::vector<Weight> component1;    // TwoLine
    std::vector<Weight> component2;    // TwoLine

    static AbstractMarkedConic smooth(std::vector<Weight> weights);
    static AbstractMarkedConic two_line(std::vector<Weight> c1, std::vector<Weight> c2);

    Weight total_weight() const;
    void validate() const;
};

// Closed-form shape of psi on a generic realization.
struct PredictedPattern {
    std::vector<Mult> line_multiplicities;           // sorted ascending
    std::map<Weight, Mult> mu_by_weight;             // Smooth: weight -> mu
    std::map<Weight, Mult> mu_component1;            // TwoLine: weight -> mu on component 1
    std::map<Weight, Mult> mu_component2;
    std::optional<Mult> mu_node;                     // TwoLine only
};

PredictedPattern predicted_pattern(const AbstractMarkedConic& a);

// Deterministic seeded realization, certified generic: the multiplicity
// multiset of psi matches predicted_pattern and every point on >= 3 distinct
// configuration lines is a marking (or the node). Resamples from the seed up
// to max_attempts, then throws GenericityExhausted.
MarkedConic generic_realize(const AbstractMarkedConic& a, std::uint64_t seed,
                            int max_attempts = 64);

// True when every point lying on >= 3 distinct lines of r is among the given
// special points. Shared by the genericity certificate and its tests.
bool concurrences_only_at(const LineConfig& r, const std::vector<ProjectivePoint>& special);

} // namespace coniclines
