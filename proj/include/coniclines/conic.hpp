#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "coniclines/linalg.hpp"
#include "coniclines/projective.hpp"

namespace coniclines {

// Coefficient order is fixed throughout the project and its file formats:
// [x^2, y^2, z^2, xy, xz, yz].
using ConicCoeffs = std::array<Int, 6>;

// A plane conic of rank 3 (smooth) or rank 2 (two distinct rational lines).
// Rank-1 forms (double lines) and rank-2 forms that do not split over Q are
// rejected at construction.
class Conic {
public:
    // Classifies six coefficients; throws RankOne / IrrationalSplit.
    static Conic classify(const std::array<Rational, 6>& coeffs);
    static Conic classify(const ConicCoeffs& coeffs);

    // The smooth reference conic y^2 - xz.
    static Conic veronese_conic();
    // The split conic xy = 0 with components x = 0, y = 0 and node (0:0:1).
    static Conic two_axes();

    const ConicCoeffs& coeffs() const { return c_; }
    int rank() const { return rank_; }
    bool smooth() const { return rank_ == 3; }

    // Rank-2 accessors.
    const std::pair<ProjectiveLine, ProjectiveLine>& components() const;
    const ProjectivePoint& node() const;

    // Twice the symmetric matrix of the form; integral and rank-equivalent.
    Mat3 doubled_matrix() const;

    Int evaluate(const ProjectivePoint& p) const;
    bool contains(const ProjectivePoint& p) const { return sgn(evaluate(p)) == 0; }

    // Image under the projectivity x -> a x (a invertible).
    Conic transformed(const Mat3& a) const;

    friend bool operator==(const Conic& x, const Conic& y) { return x.c_ == y.c_; }
    friend bool operator!=(const Conic& x, const Conic& y) { return !(x == y); }

private:
    Conic() = default;

    ConicCoeffs c_{};
    int rank_ = 0;
    std::optional<std::pair<ProjectiveLine, ProjectiveLine>> components_;
    std::optional<ProjectivePoint> node_;
};

// Gradient line at a point of the conic; for a rank-2 conic this is the
// component through p. Throws NotOnConic / AtNode.
ProjectiveLine tangent_at(const Conic& c, const ProjectivePoint& p);

// A tangency condition: the conic passes through `point` with tangent `line`.
struct Contact {
    ProjectivePoint point;
    ProjectiveLine line;
};

// Fits the unique conic through the given plain points and contacts.
// Supported shapes (total distinct points, of which contacts): (5,0), (4,1),
// (3,2), (3,3); the last is overdetermined and must be consistent.
Conic fit_conic(const std::vector<ProjectivePoint>& points,
                const std::vector<Contact>& contacts);

} // namespace coniclines
