#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bpgeo/blockpoly.hpp"
#include "bpgeo/linalg.hpp"
#include "bpgeo/specfun.hpp"

namespace bpgeo {

// One spherical harmonic component of a fixed degree. Three carriers:
//   Zonal: coeff * G_j(theta . axis)
//   Block: polynomial in the reduced block radii u_1..u_{m-1} (coeff folded in)
//   X:     polynomial in the ambient coordinates (coeff folded in)
struct HTerm {
    enum class Kind { Zonal, Block, X };
    Kind kind = Kind::Zonal;
    int degree = 0;
    double coeff = 0.0;   // Zonal only
    Vec axis;             // Zonal only
    MPoly p;              // Block / X
    BlockStructure bs;    // Block only

    double eval(const Vec& theta, int N) const;
    HTerm scaled(double c) const;
};

// Finite sum of spherical harmonics on S^{N-1}.
struct HarmonicSum {
    int N = 0;
    std::vector<HTerm> terms;

    double eval(const Vec& theta) const;
    int max_degree() const;
    bool even_only() const;

    HarmonicSum& operator+=(const HarmonicSum& o);
    HarmonicSum scaled(double c) const;

    // applies a degree multiplier m(j) to every component
    HarmonicSum apply_multiplier(const std::function<double(int)>& m) const;

    static HarmonicSum constant(int N, double c);
};

// ---------------------------------------------------------------------------
// Expansions
// ---------------------------------------------------------------------------

// Zonal expansion: f(theta) ~ sum_j a_j G_j(theta . axis), computed by
// Gauss-Jacobi quadrature against the latitude weight. even_only keeps even j.
HarmonicSum zonal_expand(int N, const Vec& axis, const std::function<double(double)>& profile,
                         int max_degree, bool even_only = true, int quad_nodes = 400);

// Exact expansion of a reduced block polynomial into block-invariant harmonics.
HarmonicSum block_expand(const BlockStructure& bs, const MPoly& f, int max_degree);

// Expansion of a black-box function of the first block radius (two blocks
// only): 1-D Gauss-Jacobi against the Dirichlet weight.
HarmonicSum block2_expand(const BlockStructure& bs, const std::function<double(double)>& g_of_u1,
                          int max_degree, int quad_nodes = 400);

// Dense-grid projection for N <= 4 (even harmonics, degrees <= max_degree).
HarmonicSum xgrid_project(int N, const std::function<double(const Vec&)>& f, int max_degree,
                          int level = 48);

// Sup-norm of (f - hsum) over a deterministic audit grid; projection error estimate.
double projection_residual(const HarmonicSum& h, const std::function<double(const Vec&)>& f,
                           int grid_points = 2048);

// Product of two harmonic sums whose terms are all Block terms over the same
// structure, re-expanded exactly.
HarmonicSum block_product(const HarmonicSum& a, const HarmonicSum& b, int max_degree);

// Product of two zonal harmonic sums sharing one axis, re-expanded exactly.
HarmonicSum zonal_product(const HarmonicSum& a, const HarmonicSum& b, int max_degree);

// ---------------------------------------------------------------------------
// SphericalFunction: evaluator | zonal profile | finite harmonic sum
// ---------------------------------------------------------------------------

enum class Parity { Even, Odd, Mixed };

class SphericalFunction {
  public:
    enum class Form { Evaluator, Zonal, Harmonic };

    static SphericalFunction evaluator(int N, std::function<double(const Vec&)> fn,
                                       Parity parity = Parity::Mixed);
    static SphericalFunction zonal(int N, Vec axis, std::function<double(double)> profile,
                                   Parity parity = Parity::Mixed);
    static SphericalFunction harmonic(HarmonicSum h);

    int N() const { return N_; }
    Form form() const { return form_; }
    Parity parity() const { return parity_; }

    double operator()(const Vec& theta) const;

    const HarmonicSum& hsum() const {
        if (form_ != Form::Harmonic) throw std::logic_error("SphericalFunction: not a harmonic sum");
        return hsum_;
    }
    bool has_hsum() const { return form_ == Form::Harmonic; }

    const Vec& axis() const { return axis_; }
    double profile(double t) const { return profile_(t); }

    // Harmonic-sum conversion: identity for Harmonic, zonal expansion for
    // Zonal, dense-grid projection for Evaluator with N <= 4.
    HarmonicSum to_harmonic(int max_degree) const;

  private:
    int N_ = 0;
    Form form_ = Form::Evaluator;
    Parity parity_ = Parity::Mixed;
    std::function<double(const Vec&)> fn_;
    Vec axis_;
    std::function<double(double)> profile_;
    HarmonicSum hsum_;
};

// Laplacian eigenvalue check for harmonic-sum components: applies a central
// finite-difference Laplacian to the degree-j homogeneous extension and
// compares with zero (harmonic polynomials are annihilated). Returns the
// worst relative defect.
double harmonic_eigen_defect(const HarmonicSum& h, int samples = 8, uint64_t seed = 12345);

}  // namespace bpgeo
