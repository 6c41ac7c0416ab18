#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "bpgeo/algebra.hpp"
#include "bpgeo/harmonics.hpp"
#include "bpgeo/linalg.hpp"

namespace bpgeo {

struct SymmetryTag {
    int d = 1;
    int n = 2;
    Chirality chirality = Chirality::Left;
};

struct QuadOpts {
    bool deterministic = false;
    int level = 24;
    uint64_t samples = 100000;
    uint64_t seed = 1;
};

struct VolumeEstimate {
    double value = 0.0;
    double se = 0.0;
    uint64_t samples = 0;
};

// Origin-symmetric star body given by its radial function. Optional exact
// carriers: rho^power_exponent as a finite harmonic sum, or a zonal profile.
struct StarBody {
    int N = 0;
    std::function<double(const Vec&)> rho;
    std::optional<SymmetryTag> symmetry;

    std::optional<HarmonicSum> power_hsum;  // rho^power_exponent
    double power_exponent = 0.0;

    bool zonal = false;
    Vec zonal_axis;
    std::function<double(double)> zonal_profile;

    double min_radial = 0.0;
    double max_radial = 0.0;

    double radial(const Vec& theta) const { return rho(theta); }
};

struct ConvexityWitness {
    Vec x, y;
    double midpoint_gauge = 0.0;
};

struct BodyReport {
    VolumeEstimate volume;
    std::optional<ConvexityWitness> convexity_witness;
    double min_radial = 0.0;
    double max_radial = 0.0;
};

// constructors -------------------------------------------------------------

StarBody make_ball(int N, double radius = 1.0);

// rho(theta) = (sum_j |theta_j|_2^p)^{-1/p} over n blocks of size d. Convex
// for p >= 1; p < 1 is rejected unless allow_star is set.
StarBody ball_block_lp(int n, int d, double p, bool allow_star = false);

// body with rho^p given as a harmonic sum (positivity validated on a grid)
StarBody body_from_power_hsum(int N, double power, HarmonicSum h,
                              std::optional<SymmetryTag> symmetry = std::nullopt);

// body of revolution: rho(theta) = profile(theta . axis)
StarBody body_zonal(int N, const Vec& axis, std::function<double(double)> profile,
                    std::optional<SymmetryTag> symmetry = std::nullopt);

// rho_K^{N-d} = rho_L^{N-d} - eps * phi, positivity checked on the validation
// grid; the symmetry tag is inherited only if phi passes the G-invariance
// audit.
StarBody perturbed_body(const StarBody& L, double eps, const SphericalFunction& phi, int d);

// operations ----------------------------------------------------------------

// Minkowski functional |x| / rho(x/|x|); 0 at the origin.
double gauge(const StarBody& K, const Vec& x);

// vol_N(K) = (sigma_{N-1}/N) * mean of rho^N
VolumeEstimate volume(const StarBody& K, const QuadOpts& q);

// paired-sample estimate of vol(K) - vol(L) (common random points, so the
// standard error reflects the difference, not the individual volumes)
VolumeEstimate volume_difference(const StarBody& K, const StarBody& L, uint64_t samples,
                                 uint64_t seed);

// average of f over the symmetry group G(n, d): trapezoid on S^1, product
// rule on S^3, fixed-seed Monte Carlo on S^7
SphericalFunction symmetrize(const SphericalFunction& f, const VectorFieldSystem& sys, int n,
                             int level = 16, uint64_t mc_samples = 8192, uint64_t seed = 99);

// sampled midpoint convexity test; returns the first witness if it fails
std::optional<ConvexityWitness> convexity_check(const StarBody& K, uint64_t trials, uint64_t seed,
                                                double tol = 1e-9);

// max over sampled orbits of |rho(G_lambda theta) - rho(theta)|
double g_invariance_defect(const std::function<double(const Vec&)>& f, int N,
                           const VectorFieldSystem& sys, int n, int orbit_count, uint64_t seed);

BodyReport body_report(const StarBody& K, const QuadOpts& q, uint64_t convexity_trials = 0,
                       uint64_t seed = 7);

// rho^p as a harmonic sum: returns the stored sum when the exponent matches,
// re-expands zonal profiles, raises stored block sums to integer powers, or
// projects on a dense grid for N <= 4.
HarmonicSum rho_power_hsum(const StarBody& K, double p, int max_degree);

}  // namespace bpgeo
