#pragma once

#include <string>

#include "bpgeo/sections.hpp"

namespace bpgeo {

struct ThetaGrid {
    int N = 0;
    std::vector<Vec> points;
};

// deterministic low-discrepancy scan grid plus fiber samples of a few orbits
ThetaGrid make_theta_grid(int N, int scan_points = 4096);
ThetaGrid make_theta_grid_with_fibers(const VectorFieldSystem& sys, int n, int scan_points = 4096,
                                      int orbit_count = 32, int fiber_points = 8,
                                      uint64_t seed = 5);

enum class Verdict { Consistent, Counterexample, Inconclusive };

std::string verdict_name(Verdict v);

struct ComparisonReport {
    int grid_size = 0;
    int violations = 0;           // grid points where S_K > S_L beyond noise
    double worst_margin = 0.0;    // min over grid of S_L - S_K
    double margin_tolerance = 0.0;
    VolumeEstimate vol_K, vol_L;
    VolumeEstimate vol_gap;       // paired estimate of vol(K) - vol(L)
    Verdict verdict = Verdict::Inconclusive;
    uint64_t seed = 0;
    std::vector<double> margins;  // per grid point, S_L - S_K
    std::vector<double> s_K, s_L;
};

struct CompareOpts {
    uint64_t volume_samples = 1000000;
    uint64_t seed = 1;
    int max_degree = 24;
    double det_tol = 1e-9;  // relative tolerance for deterministic section margins
};

// Section functions are evaluated by the multiplier route (deterministic);
// volumes by paired-sample Monte Carlo. Counterexample requires the section
// inequality on every grid point and a >= 3 sigma volume reversal.
ComparisonReport bp_compare(const StarBody& K, const StarBody& L, int d, const ThetaGrid& grid,
                            const CompareOpts& opts);

struct CertificateReport {
    double alpha = 0.0;
    double min_value = 0.0;
    Vec argmin;
    int max_degree = 0;
};

// min over the grid of (M^{alpha+1-N} rho_K^d)(theta) via multipliers
CertificateReport positivity_certificate(const StarBody& K, int d, double alpha,
                                         const ThetaGrid& grid, int max_degree = 24);

struct IntersectionBodyReport {
    double lambda = 0.0;
    double min_value = 0.0;
    Vec argmin;
    double band = 0.0;  // 3x projection-error estimate
    Verdict verdict = Verdict::Inconclusive;  // Consistent = member, Counterexample = non-member
    bool member() const { return verdict == Verdict::Consistent; }
};

IntersectionBodyReport intersection_body_test(const StarBody& K, double lambda,
                                              const ThetaGrid& grid, int max_degree = 12);

struct SearchOpts {
    double eps_start = 0.2;
    double eps_min = 1e-4;
    double eps_factor = 0.5;
    uint64_t convexity_trials = 100000;
    uint64_t seed = 1;
    CompareOpts compare;
    int psi_degree = 12;  // harmonic truncation of psi
};

struct SearchResult {
    bool refused = false;
    std::string note;
    double eps = 0.0;
    double pairing = 0.0;  // <certificate, psi>; negative drives the volume reversal
    CertificateReport certificate;
    HarmonicSum psi;
    StarBody K;
    ComparisonReport report;
    Verdict verdict = Verdict::Inconclusive;
};

// Lemma-style negative-direction construction: requires a negative positivity
// certificate of L, builds a nonnegative G-invariant psi concentrated on the
// negativity region, forms rho_K^{N-d} = rho_L^{N-d} - eps M^{alpha+1-N} psi,
// and walks eps down until K is positive and passes the sampled convexity
// test; the final comparison report decides the verdict.
SearchResult counterexample_search(const StarBody& L, const VectorFieldSystem& sys, int n,
                                   double alpha, const ThetaGrid& grid, const SearchOpts& opts);

// D_m route: compares c (M^{1-d-2m} rho^{N-d}) on the grid and reports the
// volume verdict; enforces max(N-2d-2, 0) <= 2m < N-d.
ComparisonReport dm_comparison(const StarBody& K, const StarBody& L, int d, int m,
                               const ThetaGrid& grid, const CompareOpts& opts);

}  // namespace bpgeo
