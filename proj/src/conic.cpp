#include "coniclines/conic.hpp"

#include <algorithm>
#include <cassert>

namespace coniclines {

namespace {

ConicCoeffs canonicalize_coeffs(ConicCoeffs c) {
    Int g = 0;
    for (const auto& x : c)
        g = gcd(g, abs(x));
    if (sgn(g) == 0)
        fail(ErrorCode::invalid_argument, "conic coefficients must not all vanish");
    for (auto& x : c)
        x /= g;
    for (const auto& x : c) {
        int s = sgn(x);
        if (s > 0)
            break;
        if (s < 0) {
            for (auto& y : c)
                y = -y;
            break;
        }
    }
    return c;
}

Mat3 doubled_matrix_of(const ConicCoeffs& c) {
    // q(v) = v^T N v with N twice the symmetric matrix of the form.
    Mat3 n;
    n.m = {{{2 * c[0], c[3], c[4]},
            {c[3], 2 * c[1], c[5]},
            {c[4], c[5], 2 * c[2]}}};
    return n;
}

int matrix_rank(const Mat3& n) {
    if (sgn(n.det()) != 0)
        return 3;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            if (sgn(n.m[r0][c0] * n.m[r1][c1] - n.m[r0][c1] * n.m[r1][c0]) != 0)
                return 2;
        }
    return 1;
}

Int quad_eval(const Mat3& n, const Triple& v) {
    return dot(v, n.apply(v));
}

// Kernel generator of a rank-2 symmetric matrix: the cross product of two
// independent rows.
Triple kernel_vector(const Mat3& n) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Triple k = cross(Triple{n.m[i][0], n.m[i][1], n.m[i][2]},
                             Triple{n.m[j][0], n.m[j][1], n.m[j][2]});
            if (sgn(k[0]) != 0 || sgn(k[1]) != 0 || sgn(k[2]) != 0)
                return k;
        }
    fail(ErrorCode::invalid_argument, "kernel_vector requires a rank-2 matrix");
}

const Triple kStdBasis[3] = {Triple{1, 0, 0}, Triple{0, 1, 0}, Triple{0, 0, 1}};

} // namespace

Conic Conic::classify(const std::array<Rational, 6>& coeffs) {
    Int den = 1;
    for (const auto& q : coeffs)
        den = lcm(den, q.get_den());
    ConicCoeffs c;
    for (int i = 0; i < 6; ++i) {
        Rational s = coeffs[i] * Rational(den);
        s.canonicalize();
        c[i] = s.get_num();
    }
    return classify(c);
}

Conic Conic::classify(const ConicCoeffs& coeffs) {
    Conic out;
    out.c_ = canonicalize_coeffs(coeffs);
    Mat3 n = doubled_matrix_of(out.c_);
    out.rank_ = matrix_rank(n);
    if (out.rank_ == 1)
        fail(ErrorCode::rank_one, "double line is outside the conic domain");
    if (out.rank_ == 2) {
        // Split q = l1 * l2 by restricting to a plane complementary to the
        // node and factoring the resulting binary quadratic.
        Triple node = kernel_vector(n);
        int iu = -1, iv = -1;
        for (int i = 0; i < 3 && iu < 0; ++i)
            for (int j = i + 1; j < 3; ++j) {
                Mat3 b;
                for (int k = 0; k < 3; ++k) {
                    b.m[k][0] = node[k];
                    b.m[k][1] = kStdBasis[i][k];
                    b.m[k][2] = kStdBasis[j][k];
                }
                if (sgn(b.det()) != 0) {
                    iu = i;
                    iv = j;
                    break;
                }
            }
        const Triple& u = kStdBasis[iu];
        const Triple& v = kStdBasis[iv];
        Int qa = quad_eval(n, u);               // 2 Q(u)
        Int qc = quad_eval(n, v);               // 2 Q(v)
        Int qb = 2 * dot(u, n.apply(v));        // 4 B(u, v)
        // Factor qa*s^2 + qb*s*t + qc*t^2 over Q.
        Int disc = qb * qb - 4 * qa * qc;
        if (sgn(disc) == 0)
            fail(ErrorCode::invalid_argument, "rank-2 conic with vanishing discriminant");
        if (!is_perfect_square(disc))
            fail(ErrorCode::irrational_split, "rank-2 conic does not split over Q");
        Int s = isqrt(disc);
        auto line_from_form = [&](const Int& lam, const Int& mu) {
            // Zero set of lam*s + mu*t is spanned by the node and mu*u - lam*v.
            Triple dir{mu * u[0] - lam * v[0], mu * u[1] - lam * v[1], mu * u[2] - lam * v[2]};
            return ProjectiveLine(cross(node, dir));
        };
        ProjectiveLine l1 = sgn(qa) != 0 ? line_from_form(2 * qa, qb - s)
                                         : line_from_form(0, 1);
        ProjectiveLine l2 = sgn(qa) != 0 ? line_from_form(2 * qa, qb + s)
                                         : line_from_form(qb, qc);
        if (l1 == l2)
            fail(ErrorCode::invalid_argument, "rank-2 conic split produced equal lines");
        if (l2 < l1)
            std::swap(l1, l2);
        out.components_ = std::make_pair(l1, l2);
        out.node_ = ProjectivePoint(node);
    }
    return out;
}

Conic Conic::veronese_conic() {
    return classify(ConicCoeffs{0, 1, 0, 0, -1, 0});
}

Conic Conic::two_axes() {
    return classify(ConicCoeffs{0, 0, 0, 1, 0, 0});
}

const std::pair<ProjectiveLine, ProjectiveLine>& Conic::components() const {
    if (!components_)
        fail(ErrorCode::invalid_argument, "components requested on a smooth conic");
    return *components_;
}

const ProjectivePoint& Conic::node() const {
    if (!node_)
        fail(ErrorCode::invalid_argument, "node requested on a smooth conic");
    return *node_;
}

Mat3 Conic::doubled_matrix() const {
    return doubled_matrix_of(c_);
}

Int Conic::evaluate(const ProjectivePoint& p) const {
    const Triple& v = p.coords();
    return c_[0] * v[0] * v[0] + c_[1] * v[1] * v[1] + c_[2] * v[2] * v[2]
         + c_[3] * v[0] * v[1] + c_[4] * v[0] * v[2] + c_[5] * v[1] * v[2];
}

Conic Conic::transformed(const Mat3& a) const {
    if (sgn(a.det()) == 0)
        fail(ErrorCode::invalid_argument, "conic transform requires an invertible matrix");
    // Points map by a, so the matrix of the form pulls back along adj(a).
    Mat3 b = a.adjugate();
    Mat3 n = b.transpose() * doubled_matrix() * b;
    ConicCoeffs c{n.m[0][0], n.m[1][1], n.m[2][2], 2 * n.m[0][1], 2 * n.m[0][2], 2 * n.m[1][2]};
    // n is twice the transformed form, so halve; entries of n on the diagonal
    // are even by construction and the off-diagonal doubling restores parity.
    for (auto& x : c) {
        assert(x % 2 == 0);
        x /= 2;
    }
    return classify(c);
}

ProjectiveLine tangent_at(const Conic& c, const ProjectivePoint& p) {
    if (!c.contains(p))
        fail(ErrorCode::not_on_conic, "tangent_at requires a point of the conic");
    Triple grad = c.doubled_matrix().apply(p.coords());
    if (sgn(grad[0]) == 0 && sgn(grad[1]) == 0 && sgn(grad[2]) == 0)
        fail(ErrorCode::at_node, "tangent undefined at the node");
    return ProjectiveLine(grad);
}

Conic fit_conic(const std::vector<ProjectivePoint>& points,
                const std::vector<Contact>& contacts) {
    const int total = static_cast<int>(points.size() + contacts.size());
    const int nc = static_cast<int>(contacts.size());
    const bool shape_ok = (total == 5 && nc == 0) || (total == 4 && nc == 1)
                       || (total == 3 && nc == 2) || (total == 3 && nc == 3);
    if (!shape_ok)
        fail(ErrorCode::invalid_argument, "unsupported fit_conic input shape");

    std::vector<ProjectivePoint> all = points;
    for (const auto& ct : contacts)
        all.push_back(ct.point);
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            if (all[i] == all[j])
                fail(ErrorCode::invalid_argument, "fit_conic points must be distinct");

    auto point_row = [](const ProjectivePoint& p) {
        const Triple& v = p.coords();
        std::vector<Rational> row(6);
        row[0] = Rational(v[0] * v[0]);
        row[1] = Rational(v[1] * v[1]);
        row[2] = Rational(v[2] * v[2]);
        row[3] = Rational(v[0] * v[1]);
        row[4] = Rational(v[0] * v[2]);
        row[5] = Rational(v[1] * v[2]);
        return row;
    };

    std::vector<std::vector<Rational>> rows;
    for (const auto& p : all)
        rows.push_back(point_row(p));
    for (const auto& ct : contacts) {
        // Gradient at the contact point must be proportional to the line:
        // cross(grad, line) = 0 gives three rows of rank two. The gradient is
        // linear in the six coefficients.
        const Triple& v = ct.point.coords();
        const Triple& l = ct.line.coeffs();
        // grad = N * v with N the doubled matrix; per coefficient k, the
        // contribution of coefficient k to grad is g_k(v).
        std::array<Triple, 6> grad_of_coeff = {
            Triple{2 * v[0], 0, 0},        // x^2
            Triple{0, 2 * v[1], 0},        // y^2
            Triple{0, 0, 2 * v[2]},        // z^2
            Triple{v[1], v[0], 0},         // xy
            Triple{v[2], 0, v[0]},         // xz
            Triple{0, v[2], v[1]},         // yz
        };
        for (int comp = 0; comp < 3; ++comp) {
            std::vector<Rational> row(6);
            for (int k = 0; k < 6; ++k) {
                Triple cr = cross(grad_of_coeff[k], l);
                row[k] = Rational(cr[comp]);
            }
            rows.push_back(std::move(row));
        }
    }

    auto basis = nullspace(std::move(rows), 6);
    if (basis.empty())
        fail(ErrorCode::inconsistent, "fit_conic conditions have no common conic");
    if (basis.size() > 1)
        fail(ErrorCode::underdetermined, "fit_conic conditions do not determine a conic");

    std::array<Rational, 6> sol;
    for (int i = 0; i < 6; ++i)
        sol[i] = basis[0][i];
    Conic result = [&] {
        try {
            return Conic::classify(sol);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::rank_one)
                fail(ErrorCode::degenerate_rank_one, "fit_conic solution is a double line");
            throw;
        }
    }();

    for (const auto& p : all)
        if (!result.contains(p))
            fail(ErrorCode::inconsistent, "fit_conic solution misses an input point");
    for (const auto& ct : contacts) {
        try {
            if (tangent_at(result, ct.point) != ct.line)
                fail(ErrorCode::inconsistent, "fit_conic solution has a wrong tangent");
        } catch (const Error& e) {
            if (e.code() == ErrorCode::at_node)
                fail(ErrorCode::inconsistent, "fit_conic contact point degenerated to the node");
            throw;
        }
    }
    return result;
}

} // namespace coniclines
