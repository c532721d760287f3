#pragma once

#include <array>
#include <vector>

#include "coniclines/projective.hpp"
#include "coniclines/rational.hpp"

namespace coniclines {

// Integer 3x3 matrix, row major. Used for projectivities and conic forms;
// everything is up to scale so no normalization is imposed here.
struct Mat3 {
    std::array<std::array<Int, 3>, 3> m{};

    static Mat3 identity();

    Int det() const;
    Mat3 transpose() const;
    // Adjugate: adj(A) * A = det(A) * I. Serves as the inverse up to scale.
    Mat3 adjugate() const;

    Triple apply(const Triple& v) const;
};

Mat3 operator*(const Mat3& a, const Mat3& b);

// Image of a point under the projectivity given by an invertible matrix.
ProjectivePoint apply_to_point(const Mat3& a, const ProjectivePoint& p);

// Image of a line: coefficients transform by the inverse transpose, which up
// to scale is the transposed adjugate.
ProjectiveLine apply_to_line(const Mat3& a, const ProjectiveLine& l);

// The unique projectivity sending the standard frame e1, e2, e3, (1:1:1) to
// p1..p4 (no three of which may be collinear).
Mat3 projectivity_from_frame(const ProjectivePoint& p1, const ProjectivePoint& p2,
                             const ProjectivePoint& p3, const ProjectivePoint& p4);

// The unique projectivity with src_i -> dst_i for four points in general
// position on each side.
Mat3 projectivity_mapping(const std::array<ProjectivePoint, 4>& src,
                          const std::array<ProjectivePoint, 4>& dst);

// Basis of the right nullspace of an n x w rational matrix, via exact
// Gauss-Jordan elimination.
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, int width);

} // namespace coniclines
