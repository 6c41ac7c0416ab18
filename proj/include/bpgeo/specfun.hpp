#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpgeo {

constexpr double kPi = 3.14159265358979323846;

// Surface area of the unit sphere S^{n-1} in R^n.
inline double sphere_area(int n) {
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

// sign of Gamma(x); x must not be a pole.
inline double gamma_sign(double x) {
    if (x > 0.0) return 1.0;
    double s = std::sin(kPi * x);
    return s >= 0.0 ? 1.0 : -1.0;
}

inline bool near_nonpositive_integer(double x, double margin = 1e-9) {
    if (x > 0.5) return false;
    return std::abs(x - std::round(x)) < margin;
}

// Gamma(a)/Gamma(b) through lgamma, with signs. Poles of the numerator are the
// caller's responsibility; a pole of the denominator yields 0.
inline double gamma_ratio(double a, double b) {
    if (near_nonpositive_integer(a))
        throw std::domain_error("gamma_ratio: Gamma pole in numerator at " + std::to_string(a));
    if (near_nonpositive_integer(b)) return 0.0;
    double lg = std::lgamma(a) - std::lgamma(b);
    return gamma_sign(a) * gamma_sign(b) * std::exp(lg);
}

// c_i = sigma_{i-1} / (2 pi^{(i-1)/2}), the constant linking the plain Radon
// transform to the alpha -> 0 limit of its generalized family.
inline double radon_limit_constant(int i) {
    return sphere_area(i) / (2.0 * std::pow(kPi, 0.5 * (i - 1)));
}

// ---------------------------------------------------------------------------
// Gauss quadrature (Golub-Welsch on the Jacobi matrix).
// ---------------------------------------------------------------------------

struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;
};

namespace detail {

// Eigenvalues + first eigenvector components of a symmetric tridiagonal
// matrix, implicit QL with Wilkinson shifts. d = diagonal, e = off-diagonal
// (e[0] unused). On return d holds eigenvalues, z the first components.
inline void tridiag_eig(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    z.assign(n, 0.0);
    if (n == 0) return;
    z[0] = 1.0;
    if (n == 1) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("tridiag_eig: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i], b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    // sort ascending, carrying z
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            std::swap(z[i], z[k]);
        }
    }
}

}  // namespace detail

// Gauss-Jacobi rule: integrates f(x) (1-x)^a (1+x)^b dx over [-1,1] exactly
// for polynomials of degree <= 2n-1. Requires a, b > -1.
inline Rule1D gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n >= 1 required");
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
    std::vector<double> d(n), e(n, 0.0), z;
    double apb = a + b;
    d[0] = (b - a) / (apb + 2.0);
    for (int k = 1; k < n; ++k) {
        double den = (2.0 * k + apb) * (2.0 * k + apb + 2.0);
        d[k] = (b * b - a * a) / den;
    }
    for (int k = 1; k < n; ++k) {
        double bk;
        if (k == 1)
            bk = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + apb) * (2.0 + apb) * (3.0 + apb));
        else {
            double s = 2.0 * k + apb;
            bk = 4.0 * k * (k + a) * (k + b) * (k + apb) / (s * s * (s + 1.0) * (s - 1.0));
        }
        e[k] = std::sqrt(bk);
    }
    detail::tridiag_eig(d, e, z);
    double mu0 = std::pow(2.0, apb + 1.0) * std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(apb + 2.0));
    Rule1D r;
    r.x = d;
    r.w.resize(n);
    for (int i = 0; i < n; ++i) r.w[i] = mu0 * z[i] * z[i];
    return r;
}

inline Rule1D gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

// Rule on [lo,hi] with unit weight.
inline Rule1D gauss_legendre_on(int n, double lo, double hi) {
    Rule1D g = gauss_legendre(n);
    Rule1D r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[i];
        r.w[i] = 0.5 * (hi - lo) * g.w[i];
    }
    return r;
}

// integral_0^1 t^{alpha-1} g(t) dt for 0 < alpha, via the substitution
// t = s^{1/alpha} which removes the endpoint singularity, then composite
// Gauss panels graded toward 0.
template <class F>
double integrate_power_kernel(double alpha, F&& g, int nodes_per_panel = 24, int panels = 14) {
    if (alpha <= 0) throw std::domain_error("integrate_power_kernel: alpha must be positive");
    if (alpha >= 1.0) {
        // integrand is bounded; plain graded panels on t
        double total = 0.0;
        double hi = 1.0;
        for (int p = 0; p < panels; ++p) {
            double lo = (p == panels - 1) ? 0.0 : hi * 0.25;
            Rule1D r = gauss_legendre_on(nodes_per_panel, lo, hi);
            for (int i = 0; i < nodes_per_panel; ++i)
                total += r.w[i] * std::pow(r.x[i], alpha - 1.0) * g(r.x[i]);
            hi = lo;
        }
        return total;
    }
    // t = s^{1/alpha}: dt t^{alpha-1} = (1/alpha) ds
    double inv = 1.0 / alpha;
    double total = 0.0;
    double hi = 1.0;
    for (int p = 0; p < panels; ++p) {
        double lo = (p == panels - 1) ? 0.0 : hi * 0.25;
        Rule1D r = gauss_legendre_on(nodes_per_panel, lo, hi);
        for (int i = 0; i < nodes_per_panel; ++i)
            total += r.w[i] * g(std::pow(r.x[i], inv));
        hi = lo;
    }
    return total * inv;
}

// ---------------------------------------------------------------------------
// Gegenbauer polynomials normalized to G_j(1) = 1. These are the zonal
// spherical harmonics profiles on S^{N-1}; for N = 3 they reduce to Legendre,
// for N = 2 to Chebyshev.
// ---------------------------------------------------------------------------

inline double gegenbauer(int N, int j, double t) {
    if (j == 0) return 1.0;
    if (N == 2) return std::cos(j * std::acos(std::clamp(t, -1.0, 1.0)));
    double nu = 0.5 * (N - 2);
    double c0 = 1.0, c1 = 2.0 * nu * t;
    if (j == 1) { c0 = c1; }
    else {
        for (int k = 2; k <= j; ++k) {
            double c2 = (2.0 * t * (k + nu - 1.0) * c1 - (k + 2.0 * nu - 2.0) * c0) / k;
            c0 = c1;
            c1 = c2;
        }
        c0 = c1;
    }
    // C_j^nu(1) = binom(j + 2nu - 1, j)
    double at1 = std::exp(std::lgamma(j + 2.0 * nu) - std::lgamma(j + 1.0) - std::lgamma(2.0 * nu));
    return c0 / at1;
}

// Gauss rule for the latitude weight (1-t^2)^{(N-3)/2} on [-1,1], normalized
// so the weights sum to 1 (probability measure of the t-coordinate on S^{N-1}).
inline Rule1D latitude_rule(int N, int n) {
    double e = 0.5 * (N - 3);
    Rule1D r = gauss_jacobi(n, e, e);
    double s = 0.0;
    for (double w : r.w) s += w;
    for (double& w : r.w) w /= s;
    return r;
}

// mean over S^{N-1} of G_j(theta.a) G_k(theta.a) (any unit a); exact by GJ.
inline double gegenbauer_norm2(int N, int j) {
    Rule1D r = latitude_rule(N, j + 2);
    double s = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) {
        double g = gegenbauer(N, j, r.x[i]);
        s += r.w[i] * g * g;
    }
    return s;
}

}  // namespace bpgeo
