#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "bpgeo/harmonics.hpp"
#include "bpgeo/linalg.hpp"

namespace bpgeo {

// exclusion set of the cosine family: alpha = 1, 3, 5, ... (within margin)
bool cosine_alpha_excluded(double alpha, double margin = 1e-9);
void require_cosine_alpha(double alpha);

// normalizing constants
double cosine_gamma(int N, double alpha);          // for M^alpha, Re alpha > 0
double radon_gamma(int N, int i, double alpha);    // for R_i^alpha, Re alpha > 0

// Funk-Hecke multiplier of M^alpha on even degree-j harmonics. The closed
// form is validated on first use per dimension against direct quadrature of
// the kernel on 0 < alpha < 1 (tolerance 1e-10). Odd j returns 0.
double funk_hecke_multiplier(int N, double alpha, int j);

// multiplier of the probability-normalized Funk transform itself
double funk_multiplier(int N, int j);

// M^alpha on finite even harmonic sums, exact up to multiplier accuracy; the
// sanctioned route for analytically continued exponents.
HarmonicSum cosine_transform(const HarmonicSum& f, double alpha);

// Funk-Minkowski transform: mean of f over S^{N-1} intersect u-perp.
double funk_transform(const SphericalFunction& f, const Vec& u, int level = 32,
                      uint64_t mc_samples = 200000, uint64_t seed = 77);

// Direct quadrature of M^alpha f(u) for Re alpha > 0 (N >= 3). The latitude
// integral carries the |t|^{alpha-1} kernel; alpha < 1 uses the power-kernel
// substitution.
double cosine_transform_direct(const SphericalFunction& f, double alpha, const Vec& u,
                               int level = 32, uint64_t mc_samples = 200000, uint64_t seed = 78);

// Spherical Radon transform: mean of f over S^{N-1} intersect xi, where the
// columns of xi_basis are an orthonormal basis of the i-dimensional subspace.
double radon_transform(const SphericalFunction& f, const Mat& xi_basis, int level = 32,
                       uint64_t mc_samples = 200000, uint64_t seed = 79);

// Generalized cosine transform R_i^alpha via the bispherical decomposition.
double generalized_radon(const SphericalFunction& f, const Mat& xi_basis, double alpha,
                         int level = 24, uint64_t mc_samples = 200000, uint64_t seed = 80);

// (E_lambda f)(x) = |x|^lambda f(x/|x|)
std::function<double(const Vec&)> homogeneous_extend(const SphericalFunction& f, double lambda);

// m-range guard of the D_m route: rejects 2m in {N-d, N-d+2, ...}.
void require_dm_admissible(int N, int d, int m);

// multiplier of D_m on degree-j harmonics: 2^{-2m} prod_s (j+d+2s)(j+N-2-d-2s)
double dm_multiplier(int N, int d, int m, int j);

HarmonicSum riesz_dm_transform(const HarmonicSum& f, int d, int m);

// (D_m f)(theta): eigenrelation route for harmonic sums, m-fold central
// finite-difference Laplacian of E_{-d} f with Richardson extrapolation for
// black-box evaluators.
double riesz_dm_point(const SphericalFunction& f, int d, int m, const Vec& theta);
double riesz_dm_fd(const SphericalFunction& f, int d, int m, const Vec& theta);

// Multiplier table keyed by (N, alpha, j), dumpable as structured text.
struct MultiplierTable {
    int N = 0;
    double alpha = 0.0;
    int max_degree = 0;
    std::vector<double> values;  // even degrees 0, 2, ..., max_degree

    static MultiplierTable build(int N, double alpha, int max_degree);
    void dump(std::ostream& os) const;
    static MultiplierTable load(std::istream& is);
};

}  // namespace bpgeo
