#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "bpgeo/linalg.hpp"

namespace bpgeo {

// Quaternion q = q0 e0 + q1 e1 + q2 e2 + q3 e3 over the reals.
struct Quaternion {
    double q0 = 0, q1 = 0, q2 = 0, q3 = 0;

    static Quaternion unit(int i) {
        Quaternion q;
        if (i == 0) q.q0 = 1;
        else if (i == 1) q.q1 = 1;
        else if (i == 2) q.q2 = 1;
        else if (i == 3) q.q3 = 1;
        else throw std::invalid_argument("Quaternion::unit: index 0..3");
        return q;
    }

    Quaternion conj() const { return {q0, -q1, -q2, -q3}; }
    double norm2() const { return q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3; }
    double norm() const { return std::sqrt(norm2()); }
    Vec as_vec() const { return {q0, q1, q2, q3}; }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.q0 + b.q0, a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.q0 - b.q0, a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3};
    }
    friend Quaternion operator*(double c, const Quaternion& a) {
        return {c * a.q0, c * a.q1, c * a.q2, c * a.q3};
    }
};

Quaternion quat_mul(const Quaternion& p, const Quaternion& q);

// 4x4 matrices of the left/right multiplication maps: L_q v_p = v_{qp},
// R_q v_p = v_{pq}.
Mat left_matrix(const Quaternion& q);
Mat right_matrix(const Quaternion& q);

enum class Chirality { Left, Right };

// Complete orthonormal system of linear tangent vector fields A_1..A_{d-1}
// on S^{d-1}; exists only for d in {1,2,4,8}. For d = 4 the chirality selects
// the left or right quaternion system; d = 2 and d = 8 each have a single
// published system (further ones arise by conjugation).
struct VectorFieldSystem {
    int d = 1;
    Chirality chirality = Chirality::Left;
    std::vector<Mat> fields;  // A_1..A_{d-1}, each d x d

    const Mat& field(int i) const { return fields.at(i - 1); }  // 1-based, matching A_i

    // gamma^T A_i gamma for an orthogonal conjugator gamma.
    VectorFieldSystem conjugated(const Mat& gamma) const;
};

VectorFieldSystem vector_field_system(int d, Chirality chirality = Chirality::Left);

// Radon-Hurwitz number rho(d): write d = 2^{4s+r} t with t odd, 0 <= r < 4;
// rho(d) = 2^r + 8s - 1.
int radon_hurwitz(int d);

// g_lambda = sum_{i=0}^{d-1} lambda_i A_i with A_0 = I; orthogonal for unit lambda.
Mat g_lambda(const VectorFieldSystem& sys, const Vec& lambda);

// N x N block-diagonal lift with n equal blocks g_lambda.
struct GroupElement {
    int n = 0;
    int d = 0;
    Vec lambda;
    Mat matrix;
};

GroupElement group_element(const VectorFieldSystem& sys, int n, const Vec& lambda);

// Block-diagonal reflection of n copies of diag(-1, I_3); conjugates the left
// quaternion system into the right one.
Mat reflect_J(int n, int d);

// Block-diagonal lift diag(A_i, ..., A_i) with n blocks; i = 0 gives I_N.
Mat block_lift(const VectorFieldSystem& sys, int n, int i);

// theta on S^{N-1} together with the d-frame [theta, A_1 theta, ...] and an
// orthonormal basis of the (N-d)-dimensional subspace H_theta orthogonal to it.
struct SectionFrame {
    Vec theta;
    Mat frame;   // N x d
    Mat basisH;  // N x (N-d)
};

SectionFrame section_frame(const VectorFieldSystem& sys, int n, const Vec& theta,
                           double tol = 1e-10);

}  // namespace bpgeo
