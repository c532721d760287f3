#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "coniclines/marked_conic.hpp"
#include "coniclines/projective.hpp"

namespace coniclines {

enum class Status { Stable, StrictlySemistable, Unstable };

const char* to_string(Status s);

// Result of a stability test, with the extremal witness and the exact
// threshold it was compared against.
struct StabilityVerdict {
    Status status = Status::Stable;
    std::variant<ProjectivePoint, ProjectiveLine, P1Point> witness{ProjectivePoint(1, 0, 0)};
    Rational mu;
    Rational threshold;

    bool semistable() const { return status != Status::Unstable; }
};

// Total multiplicity of the lines of r through p.
Mult mu_point(const LineConfig& r, const ProjectivePoint& p);

// All points that can carry mu >= 2: pairwise intersections of the distinct
// lines, plus one representative point when r has a single distinct line.
std::vector<ProjectivePoint> candidate_points(const LineConfig& r);

// Hilbert-Mumford verdict for a configuration of h lines: semistable iff
// max_p mu_p <= 2h/3 and max_l mu_l <= h/3, stable iff both are strict.
StabilityVerdict config_verdict(const LineConfig& r);

// A binary form as its weighted multiset of roots on the projective line.
class BinaryForm {
public:
    BinaryForm(std::vector<std::pair<P1Point, Weight>> roots);

    const std::vector<std::pair<P1Point, Weight>>& roots() const { return roots_; }
    Weight degree() const { return degree_; }

    std::vector<Weight> multiplicity_profile() const; // sorted ascending

    friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
        return a.roots_ == b.roots_;
    }
    friend bool operator!=(const BinaryForm& a, const BinaryForm& b) { return !(a == b); }

private:
    std::vector<std::pair<P1Point, Weight>> roots_;
    Weight degree_ = 0;
};

// Standard criterion: stable iff every root multiplicity < degree/2,
// strictly semistable iff the maximum equals degree/2 exactly.
StabilityVerdict binary_form_verdict(const BinaryForm& b);

} // namespace coniclines
