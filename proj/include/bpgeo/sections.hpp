#pragma once

#include "bpgeo/algebra.hpp"
#include "bpgeo/bodies.hpp"
#include "bpgeo/transforms.hpp"

namespace bpgeo {

// vol_{N-d}(K intersect H_theta) by direct quadrature over the fiber sphere
VolumeEstimate section_volume(const StarBody& K, const SectionFrame& frame, const QuadOpts& q);

// the constant of the section identity: pi^{N/2-d} sigma_{d-1} / (N-d)
double section_identity_constant(int N, int d);

// section function through the multiplier route, c * (M^{1-d} rho^{N-d})(theta);
// requires rho^{N-d} as an even harmonic sum
double section_function_multiplier(const StarBody& K, int d, const Vec& theta, int max_degree = 24);

struct IdentityCheck {
    double direct = 0.0;
    double direct_se = 0.0;
    double transform_side = 0.0;
    double residual = 0.0;
};

// |direct section volume - c (M^{1-d} rho^{N-d})(theta)|
IdentityCheck section_identity_check(const StarBody& K, const VectorFieldSystem& sys, int n,
                                     const Vec& theta, const QuadOpts& q, int max_degree = 24);

// The unique lambda > 0 with z + lambda v on the boundary; bracketing +
// bisection to relative 1e-12, polished by secant steps.
double shifted_radial(const StarBody& K, const Vec& z, const Vec& v);

struct WeightedSectionOpts {
    int outer_level = 16;     // sphere in xi-perp
    int middle_level = 16;    // sphere in xi
    int radial_nodes = 48;
    uint64_t mc_samples = 20000;  // for middle spheres of dimension > 4
    uint64_t seed = 31;
};

// A_{i,beta}(t, xi) = mean_{u in S cap xi-perp} of int_{K cap (xi + t u)} |x|^beta dx
double weighted_section(const StarBody& K, const Mat& xi_basis, double beta, double t,
                        const WeightedSectionOpts& opts = {});

struct BrunnReport {
    double worst_margin = 0.0;  // min over grid of A(0) - A(t)
    double worst_t = 0.0;
    bool violated = false;
};

BrunnReport brunn_check(const StarBody& K, const Mat& xi_basis, double beta,
                        const std::vector<double>& t_grid, double tol = 1e-9,
                        const WeightedSectionOpts& opts = {});

enum class SlicingCase { PositiveAlpha, HalfValue, SecondDerivative };

struct SlicingCheck {
    SlicingCase used = SlicingCase::PositiveAlpha;
    double weighted_side = 0.0;
    double transform_side = 0.0;
    double residual = 0.0;
};

// Residual between the weighted-section side and the cosine-transform side of
// the slicing identities, with xi = H_theta and i = N - d. `alpha` is the
// comparison exponent: alpha > N-d integrates t^{alpha+d-N-1} A(t); alpha = N-d
// is the half-value case; N-d-2 <= alpha < N-d uses the subtracted integral or
// the second derivative at alpha = N-d-2.
SlicingCheck slicing_identity_check(const StarBody& K, const VectorFieldSystem& sys, int n,
                              const Vec& theta, double alpha, double beta,
                              const WeightedSectionOpts& opts = {}, int max_degree = 24);

}  // namespace bpgeo
