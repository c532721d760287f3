#include "coniclines/linalg.hpp"

#include <cassert>

namespace coniclines {

Mat3 Mat3::identity() {
    Mat3 a;
    for (int i = 0; i < 3; ++i)
        a.m[i][i] = 1;
    return a;
}

Int Mat3::det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 Mat3::transpose() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t.m[i][j] = m[j][i];
    return t;
}

Mat3 Mat3::adjugate() const {
    Mat3 a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            a.m[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    return a;
}

Triple Mat3::apply(const Triple& v) const {
    Triple r;
    for (int i = 0; i < 3; ++i)
        r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Int s = 0;
            for (int k = 0; k < 3; ++k)
                s += a.m[i][k] * b.m[k][j];
            c.m[i][j] = s;
        }
    return c;
}

ProjectivePoint apply_to_point(const Mat3& a, const ProjectivePoint& p) {
    return ProjectivePoint(a.apply(p.coords()));
}

ProjectiveLine apply_to_line(const Mat3& a, const ProjectiveLine& l) {
    return ProjectiveLine(a.adjugate().transpose().apply(l.coeffs()));
}

Mat3 projectivity_from_frame(const ProjectivePoint& p1, const ProjectivePoint& p2,
                             const ProjectivePoint& p3, const ProjectivePoint& p4) {
    // Columns q1, q2, q3 scaled so that their sum is a representative of p4.
    // The scales solve [q1 q2 q3] x = q4; by Cramer each x_i is a ratio of
    // determinants, so scaling by the common denominator keeps it integral.
    Mat3 cols;
    const Triple& a = p1.coords();
    const Triple& b = p2.coords();
    const Triple& c = p3.coords();
    const Triple& d = p4.coords();
    for (int i = 0; i < 3; ++i) {
        cols.m[i][0] = a[i];
        cols.m[i][1] = b[i];
        cols.m[i][2] = c[i];
    }
    Int det = cols.det();
    if (sgn(det) == 0)
        fail(ErrorCode::invalid_argument, "frame points are not in general position");
    Triple x = cols.adjugate().apply(d); // det * solution
    if (sgn(x[0]) == 0 || sgn(x[1]) == 0 || sgn(x[2]) == 0)
        fail(ErrorCode::invalid_argument, "fourth frame point lies on a side of the triangle");
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        r.m[i][0] = a[i] * x[0];
        r.m[i][1] = b[i] * x[1];
        r.m[i][2] = c[i] * x[2];
    }
    return r;
}

Mat3 projectivity_mapping(const std::array<ProjectivePoint, 4>& src,
                          const std::array<ProjectivePoint, 4>& dst) {
    Mat3 s = projectivity_from_frame(src[0], src[1], src[2], src[3]);
    Mat3 d = projectivity_from_frame(dst[0], dst[1], dst[2], dst[3]);
    return d * s.adjugate();
}

std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, int width) {
    const int n = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < width && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (sgn(rows[r][col]) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(rows[rank], rows[pivot]);
        Rational inv = rows[rank][col];
        for (int j = col; j < width; ++j)
            rows[rank][j] /= inv;
        for (int r = 0; r < n; ++r) {
            if (r == rank || sgn(rows[r][col]) == 0)
                continue;
            Rational f = rows[r][col];
            for (int j = col; j < width; ++j)
                rows[r][j] -= f * rows[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(width, false);
    for (int c : pivot_col)
        is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < width; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(width, Rational(0));
        v[free] = 1;
        for (int r = 0; r < rank; ++r)
            v[pivot_col[r]] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace coniclines
