#include "bpgeo/algebra.hpp"

#include <cmath>

namespace bpgeo {

Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
    return {p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
            p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
            p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
            p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0};
}

Mat left_matrix(const Quaternion& q) {
    Mat m(4, 4);
    const double a[4][4] = {{q.q0, -q.q1, -q.q2, -q.q3},
                            {q.q1, q.q0, -q.q3, q.q2},
                            {q.q2, q.q3, q.q0, -q.q1},
                            {q.q3, -q.q2, q.q1, q.q0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = a[i][j];
    return m;
}

Mat right_matrix(const Quaternion& q) {
    Mat m(4, 4);
    const double a[4][4] = {{q.q0, -q.q1, -q.q2, -q.q3},
                            {q.q1, q.q0, q.q3, -q.q2},
                            {q.q2, -q.q3, q.q0, q.q1},
                            {q.q3, q.q2, -q.q1, q.q0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = a[i][j];
    return m;
}

namespace {

// signed-permutation rows for the S^7 system: entry (s, k) in row i means
// (A sigma)_i = s * sigma_k
struct SignedPerm {
    int idx[8];
    int sgn[8];
};

Mat from_signed_perm(const SignedPerm& p) {
    Mat m(8, 8);
    for (int i = 0; i < 8; ++i) m(i, p.idx[i]) = p.sgn[i];
    return m;
}

std::vector<Mat> s7_fields() {
    // indices are 0-based; rows list (A sigma)_i as signed source components
    const SignedPerm table[7] = {
        {{1, 0, 3, 2, 5, 4, 7, 6}, {+1, -1, +1, -1, +1, -1, -1, +1}},
        {{2, 3, 0, 1, 6, 7, 4, 5}, {+1, -1, -1, +1, +1, +1, -1, -1}},
        {{3, 2, 1, 0, 7, 6, 5, 4}, {+1, +1, -1, -1, +1, -1, +1, -1}},
        {{4, 5, 6, 7, 0, 1, 2, 3}, {+1, -1, -1, -1, -1, +1, +1, +1}},
        {{5, 4, 7, 6, 1, 0, 3, 2}, {+1, +1, -1, +1, -1, -1, -1, +1}},
        {{6, 7, 4, 5, 2, 3, 0, 1}, {+1, +1, +1, -1, -1, +1, -1, -1}},
        {{7, 6, 5, 4, 3, 2, 1, 0}, {+1, -1, +1, +1, -1, -1, +1, -1}},
    };
    std::vector<Mat> f;
    f.reserve(7);
    for (const auto& p : table) f.push_back(from_signed_perm(p));
    return f;
}

}  // namespace

VectorFieldSystem vector_field_system(int d, Chirality chirality) {
    if (d != 1 && d != 2 && d != 4 && d != 8)
        throw std::invalid_argument(
            "vector_field_system: d must be one of {1,2,4,8}; complete orthonormal "
            "systems of linear tangent vector fields exist only on the parallelizable "
            "spheres S^1, S^3, S^7");
    VectorFieldSystem sys;
    sys.d = d;
    sys.chirality = chirality;
    if (d == 1) return sys;
    if (d == 2) {
        Mat a(2, 2);
        a(0, 1) = -1;
        a(1, 0) = 1;
        sys.fields.push_back(a);
        return sys;
    }
    if (d == 4) {
        for (int i = 1; i <= 3; ++i) {
            Quaternion e = Quaternion::unit(i);
            sys.fields.push_back(chirality == Chirality::Left ? left_matrix(e)
                                                              : right_matrix(e.conj()));
        }
        return sys;
    }
    sys.fields = s7_fields();
    return sys;
}

VectorFieldSystem VectorFieldSystem::conjugated(const Mat& gamma) const {
    if (gamma.rows() != d || gamma.cols() != d)
        throw std::invalid_argument("conjugated: gamma must be d x d");
    if (orthonormality_defect(gamma) > 1e-10)
        throw std::invalid_argument("conjugated: gamma must be orthogonal");
    VectorFieldSystem out = *this;
    Mat gt = gamma.transposed();
    for (auto& a : out.fields) a = gt * a * gamma;
    return out;
}

int radon_hurwitz(int d) {
    if (d < 1) throw std::invalid_argument("radon_hurwitz: d >= 1 required");
    int e = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++e;
    }
    int s = e / 4, r = e % 4;
    return (1 << r) + 8 * s - 1;
}

Mat g_lambda(const VectorFieldSystem& sys, const Vec& lambda) {
    const int d = sys.d;
    if (static_cast<int>(lambda.size()) != d)
        throw std::invalid_argument("g_lambda: lambda must have d components");
    if (std::abs(norm(lambda) - 1.0) > 1e-12)
        throw std::invalid_argument("g_lambda: lambda must be a unit vector");
    Mat g = Mat::identity(d).scaled(lambda[0]);
    for (int i = 1; i < d; ++i) g = g + sys.field(i).scaled(lambda[i]);
    return g;
}

GroupElement group_element(const VectorFieldSystem& sys, int n, const Vec& lambda) {
    if (n < 2) throw std::invalid_argument("group_element: n >= 2 required");
    Mat g = g_lambda(sys, lambda);
    const int d = sys.d, N = d * n;
    GroupElement el;
    el.n = n;
    el.d = d;
    el.lambda = lambda;
    el.matrix = Mat(N, N);
    for (int b = 0; b < n; ++b)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) el.matrix(b * d + i, b * d + j) = g(i, j);
    return el;
}

Mat reflect_J(int n, int d) {
    if (d != 4) throw std::invalid_argument("reflect_J: defined for d = 4 only");
    Mat J = Mat::identity(4 * n);
    for (int b = 0; b < n; ++b) J(4 * b, 4 * b) = -1.0;
    return J;
}

Mat block_lift(const VectorFieldSystem& sys, int n, int i) {
    const int d = sys.d, N = d * n;
    if (i == 0) return Mat::identity(N);
    const Mat& a = sys.field(i);
    Mat m(N, N);
    for (int b = 0; b < n; ++b)
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) m(b * d + r, b * d + c) = a(r, c);
    return m;
}

SectionFrame section_frame(const VectorFieldSystem& sys, int n, const Vec& theta, double tol) {
    const int d = sys.d, N = d * n;
    if (static_cast<int>(theta.size()) != N)
        throw std::invalid_argument("section_frame: theta must live in R^{d n}");
    if (std::abs(norm(theta) - 1.0) > 1e-12)
        throw std::invalid_argument("section_frame: theta must be a unit vector");
    SectionFrame sf;
    sf.theta = theta;
    sf.frame = Mat(N, d);
    sf.frame.set_col(0, theta);
    for (int i = 1; i < d; ++i) {
        const Mat& a = sys.field(i);
        Vec col(N);
        for (int b = 0; b < n; ++b)
            for (int r = 0; r < d; ++r) {
                double s = 0.0;
                for (int c = 0; c < d; ++c) s += a(r, c) * theta[b * d + c];
                col[b * d + r] = s;
            }
        sf.frame.set_col(i, col);
    }
    sf.basisH = complete_orthonormal_basis(sf.frame, tol);
    return sf;
}

}  // namespace bpgeo
