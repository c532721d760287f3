#include "coniclines/stability.hpp"

#include <algorithm>
#include <set>

namespace coniclines {

const char* to_string(Status s) {
    switch (s) {
    case Status::Stable: return "stable";
    case Status::StrictlySemistable: return "strictly_semistable";
    case Status::Unstable: return "unstable";
    }
    return "?";
}

Mult mu_point(const LineConfig& r, const ProjectivePoint& p) {
    if (r.empty())
        fail(ErrorCode::empty_config, "mu_point on an empty configuration");
    Mult mu = 0;
    for (const auto& [line, mult] : r.entries())
        if (incident(p, line))
            mu += mult;
    return mu;
}

std::vector<ProjectivePoint> candidate_points(const LineConfig& r) {
    if (r.empty())
        fail(ErrorCode::empty_config, "candidate_points on an empty configuration");
    std::vector<ProjectiveLine> lines;
    for (const auto& [line, mult] : r.entries())
        lines.push_back(line);
    std::set<ProjectivePoint> pts;
    if (lines.size() == 1) {
        // Any point of the line realizes its multiplicity; pick one.
        const Triple& l = lines[0].coeffs();
        if (sgn(l[0]) != 0 || sgn(l[1]) != 0)
            pts.insert(ProjectivePoint(cross(l, Triple{0, 0, 1})));
        else
            pts.insert(ProjectivePoint(cross(l, Triple{1, 0, 0})));
    }
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j)
            pts.insert(intersect_lines(lines[i], lines[j]));
    return std::vector<ProjectivePoint>(pts.begin(), pts.end());
}

StabilityVerdict config_verdict(const LineConfig& r) {
    if (r.empty())
        fail(ErrorCode::empty_config, "config_verdict on an empty configuration");
    const Mult h = r.total();

    ProjectiveLine best_line = r.entries().begin()->first;
    Mult max_line = 0;
    for (const auto& [line, mult] : r.entries())
        if (mult > max_line) {
            max_line = mult;
            best_line = line;
        }

    auto pts = candidate_points(r);
    ProjectivePoint best_point = pts.front();
    Mult max_point = 0;
    for (const auto& p : pts) {
        Mult mu = mu_point(r, p);
        if (mu > max_point) {
            max_point = mu;
            best_point = p;
        }
    }

    const Rational line_threshold = make_rational(Int(h), Int(3));
    const Rational point_threshold = make_rational(Int(2) * h, Int(3));

    StabilityVerdict v;
    // Exact integer comparisons: 3*mu vs h resp. 2h. The line witness is
    // preferred whenever it is the binding comparison.
    if (3 * max_line > h) {
        v.status = Status::Unstable;
        v.witness = best_line;
        v.mu = Rational(static_cast<long>(max_line));
        v.threshold = line_threshold;
    } else if (3 * max_point > 2 * h) {
        v.status = Status::Unstable;
        v.witness = best_point;
        v.mu = Rational(static_cast<long>(max_point));
        v.threshold = point_threshold;
    } else if (3 * max_line == h) {
        v.status = Status::StrictlySemistable;
        v.witness = best_line;
        v.mu = Rational(static_cast<long>(max_line));
        v.threshold = line_threshold;
    } else if (3 * max_point == 2 * h) {
        v.status = Status::StrictlySemistable;
        v.witness = best_point;
        v.mu = Rational(static_cast<long>(max_point));
        v.threshold = point_threshold;
    } else {
        v.status = Status::Stable;
        // Report the comparison with the larger mu/threshold ratio, i.e.
        // compare 3*mu_l/h against 3*mu_p/2h; ties go to the line.
        if (2 * max_line >= max_point) {
            v.witness = best_line;
            v.mu = Rational(static_cast<long>(max_line));
            v.threshold = line_threshold;
        } else {
            v.witness = best_point;
            v.mu = Rational(static_cast<long>(max_point));
            v.threshold = point_threshold;
        }
    }
    return v;
}

BinaryForm::BinaryForm(std::vector<std::pair<P1Point, Weight>> roots) : roots_(std::move(roots)) {
    if (roots_.empty())
        fail(ErrorCode::invalid_argument, "binary form needs at least one root");
    std::sort(roots_.begin(), roots_.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first)
            return a.first < b.first;
        return a.second < b.second;
    });
    for (size_t i = 0; i < roots_.size(); ++i) {
        if (roots_[i].second <= 0)
            fail(ErrorCode::invalid_argument, "root multiplicities must be positive");
        if (i > 0 && roots_[i].first == roots_[i - 1].first)
            fail(ErrorCode::invalid_argument, "root points must be distinct");
        degree_ += roots_[i].second;
    }
}

std::vector<Weight> BinaryForm::multiplicity_profile() const {
    std::vector<Weight> out;
    for (const auto& [pt, w] : roots_)
        out.push_back(w);
    std::sort(out.begin(), out.end());
    return out;
}

StabilityVerdict binary_form_verdict(const BinaryForm& b) {
    if (b.degree() < 2)
        fail(ErrorCode::invalid_argument, "binary form verdict needs degree >= 2");
    P1Point best = b.roots().front().first;
    Weight max_mult = 0;
    for (const auto& [pt, w] : b.roots())
        if (w > max_mult) {
            max_mult = w;
            best = pt;
        }
    StabilityVerdict v;
    v.witness = best;
    v.mu = Rational(static_cast<long>(max_mult));
    v.threshold = make_rational(Int(b.degree()), Int(2));
    if (2 * max_mult > b.degree())
        v.status = Status::Unstable;
    else if (2 * max_mult == b.degree())
        v.status = Status::StrictlySemistable;
    else
        v.status = Status::Stable;
    return v;
}

} // namespace coniclines
