#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bpgeo/kernels.hpp"
#include "bpgeo/linalg.hpp"

namespace bpgeo {

// Explicit node/weight rule on S^{N-1}; weights sum to 1.
struct SphereRule {
    int N = 0;
    std::vector<Vec> nodes;
    std::vector<double> w;

    double mean(const std::function<double(const Vec&)>& f) const {
        double s = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i) s += w[i] * f(nodes[i]);
        return s;
    }
};

// Product rule: uniform angles on S^1, Gauss-Jacobi latitudes above. Exact
// for spherical polynomials of degree < 2*level.
SphereRule product_sphere_rule(int N, int level);

// Carries a rule on S^{k-1} into S^{N-1} through an N x k orthonormal basis.
SphereRule mapped_rule(const Mat& basis, const SphereRule& sub);

// Monte Carlo mean over S^{N-1}: uniform points via normalized Gaussians,
// chunk-deterministic under the root seed.
kernels::MeanResult mc_sphere_mean(int N, uint64_t samples, uint64_t seed,
                                   const std::function<double(const Vec&)>& f,
                                   kernels::Mode mode = kernels::default_mode());

// Same, mapped into a subspace spanned by an orthonormal basis.
kernels::MeanResult mc_subsphere_mean(const Mat& basis, uint64_t samples, uint64_t seed,
                                      const std::function<double(const Vec&)>& f,
                                      kernels::Mode mode = kernels::default_mode());

// Quadrature configuration for sphere means: deterministic product rules are
// available for N <= 4, Monte Carlo for any N.
struct SphereQuadrature {
    enum class Kind { Deterministic, MonteCarlo };
    int N = 0;
    Kind kind = Kind::MonteCarlo;
    int level = 16;            // deterministic resolution
    uint64_t samples = 100000;  // MC sample count
    uint64_t seed = 1;

    kernels::MeanResult mean(const std::function<double(const Vec&)>& f) const;
};

SphereQuadrature sphere_quadrature_deterministic(int N, int level);
SphereQuadrature sphere_quadrature_mc(int N, uint64_t samples, uint64_t seed);

}  // namespace bpgeo
