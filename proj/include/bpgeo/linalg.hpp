#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bpgeo {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec& axpy(Vec& y, double c, const Vec& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
    return y;
}

inline Vec scaled(const Vec& x, double c) {
    Vec y(x);
    for (double& v : y) v *= c;
    return y;
}

inline Vec normalized(const Vec& x) {
    double n = norm(x);
    if (n == 0.0) throw std::domain_error("normalized: zero vector");
    return scaled(x, 1.0 / n);
}

// Dense row-major matrix. Sizes stay small (N <= 64) throughout.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int r, int c) : rows_(r), cols_(c), a_(static_cast<size_t>(r) * c, 0.0) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vec col(int j) const {
        Vec v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_col(int j, const Vec& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    friend Mat operator*(const Mat& A, const Mat& B) {
        if (A.cols_ != B.rows_) throw std::invalid_argument("Mat*: shape mismatch");
        Mat C(A.rows_, B.cols_);
        for (int i = 0; i < A.rows_; ++i)
            for (int k = 0; k < A.cols_; ++k) {
                double aik = A(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < B.cols_; ++j) C(i, j) += aik * B(k, j);
            }
        return C;
    }

    friend Vec operator*(const Mat& A, const Vec& x) {
        if (static_cast<size_t>(A.cols_) != x.size()) throw std::invalid_argument("Mat*vec: shape mismatch");
        Vec y(A.rows_, 0.0);
        for (int i = 0; i < A.rows_; ++i) {
            double s = 0.0;
            for (int j = 0; j < A.cols_; ++j) s += A(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    friend Mat operator+(const Mat& A, const Mat& B) {
        Mat C(A.rows_, A.cols_);
        for (size_t i = 0; i < A.a_.size(); ++i) C.a_[i] = A.a_[i] + B.a_[i];
        return C;
    }

    friend Mat operator-(const Mat& A, const Mat& B) {
        Mat C(A.rows_, A.cols_);
        for (size_t i = 0; i < A.a_.size(); ++i) C.a_[i] = A.a_[i] - B.a_[i];
        return C;
    }

    Mat scaled(double c) const {
        Mat C(*this);
        for (double& v : C.a_) v *= c;
        return C;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

  private:
    int rows_, cols_;
    std::vector<double> a_;
};

inline double max_abs(const Mat& a) { return a.max_abs(); }

// ||A^T A - I||_inf, the orthonormality defect of the columns.
inline double orthonormality_defect(const Mat& A) {
    Mat g = A.transposed() * A;
    Mat d = g - Mat::identity(A.cols());
    return d.max_abs();
}

// Determinant by Gaussian elimination with partial pivoting (small matrices).
inline double determinant(Mat A) {
    int n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("determinant: square matrix required");
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
        if (A(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(A(p, j), A(k, j));
            det = -det;
        }
        det *= A(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = A(i, k) / A(k, k);
            for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return det;
}

// Extends the orthonormal columns of `frame` (N x k) to an orthonormal basis
// of R^N by successive orthogonalization of the standard basis vectors,
// skipping near-dependent candidates. Deterministic: the same frame always
// produces the same completion. Returns the N x (N-k) complement.
inline Mat complete_orthonormal_basis(const Mat& frame, double tol = 1e-10) {
    const int N = frame.rows();
    const int k = frame.cols();
    std::vector<Vec> basis;
    basis.reserve(N);
    for (int j = 0; j < k; ++j) basis.push_back(frame.col(j));
    for (int c = 0; c < N && static_cast<int>(basis.size()) < N; ++c) {
        Vec v(N, 0.0);
        v[c] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) axpy(v, -dot(v, b), b);
        double n = norm(v);
        if (n < tol) continue;
        basis.push_back(scaled(v, 1.0 / n));
    }
    if (static_cast<int>(basis.size()) != N)
        throw std::runtime_error("complete_orthonormal_basis: completion failed");
    Mat H(N, N - k);
    for (int j = k; j < N; ++j) H.set_col(j - k, basis[j]);
    return H;
}

}  // namespace bpgeo
