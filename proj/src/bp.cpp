#include "bpgeo/bp.hpp"

#include <algorithm>
#include <cmath>

#include "bpgeo/kernels.hpp"
#include "bpgeo/rng.hpp"
#include "bpgeo/specfun.hpp"

namespace bpgeo {

ThetaGrid make_theta_grid(int N, int scan_points) {
    ThetaGrid g;
    g.N = N;
    g.points = low_discrepancy_sphere(N, scan_points);
    return g;
}

ThetaGrid make_theta_grid_with_fibers(const VectorFieldSystem& sys, int n, int scan_points,
                                      int orbit_count, int fiber_points, uint64_t seed) {
    const int N = sys.d * n;
    ThetaGrid g = make_theta_grid(N, scan_points);
    Rng rng(seed);
    for (int o = 0; o < orbit_count; ++o) {
        Vec theta = rng.next_sphere(N);
        g.points.push_back(theta);
        for (int k = 1; k < fiber_points; ++k) {
            Vec lam = rng.next_sphere(sys.d);
            g.points.push_back(group_element(sys, n, lam).matrix * theta);
        }
    }
    return g;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "consistent";
        case Verdict::Counterexample: return "counterexample";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

ComparisonReport bp_compare(const StarBody& K, const StarBody& L, int d, const ThetaGrid& grid,
                            const CompareOpts& opts) {
    if (K.N != L.N || K.N != grid.N)
        throw std::invalid_argument("bp_compare: dimension mismatch between bodies and grid");
    ComparisonReport rep;
    rep.grid_size = static_cast<int>(grid.points.size());
    rep.seed = opts.seed;

    HarmonicSum hk = cosine_transform(rho_power_hsum(K, K.N - d, opts.max_degree), 1.0 - d);
    HarmonicSum hl = cosine_transform(rho_power_hsum(L, L.N - d, opts.max_degree), 1.0 - d);
    double c = section_identity_constant(K.N, d);

    const auto& pts = grid.points;
    rep.s_K = kernels::map_grid(pts.size(), [&](uint64_t i) { return c * hk.eval(pts[i]); });
    rep.s_L = kernels::map_grid(pts.size(), [&](uint64_t i) { return c * hl.eval(pts[i]); });

    double scale = 0.0;
    for (double v : rep.s_L) scale = std::max(scale, std::abs(v));
    rep.margin_tolerance = opts.det_tol * std::max(1.0, scale);

    rep.margins.resize(pts.size());
    rep.worst_margin = 1e300;
    for (size_t i = 0; i < pts.size(); ++i) {
        rep.margins[i] = rep.s_L[i] - rep.s_K[i];
        rep.worst_margin = std::min(rep.worst_margin, rep.margins[i]);
        if (rep.margins[i] < -rep.margin_tolerance) ++rep.violations;
    }

    QuadOpts vq;
    vq.samples = opts.volume_samples;
    vq.seed = opts.seed;
    rep.vol_K = volume(K, vq);
    rep.vol_L = volume(L, vq);
    rep.vol_gap = volume_difference(K, L, opts.volume_samples, opts.seed);

    if (rep.violations > 0) {
        rep.verdict = Verdict::Inconclusive;  // the section hypothesis itself fails
    } else if (rep.vol_gap.value >= 3.0 * rep.vol_gap.se && rep.vol_gap.value > 0.0) {
        rep.verdict = Verdict::Counterexample;
    } else {
        rep.verdict = Verdict::Consistent;
    }
    return rep;
}

namespace {

HarmonicSum certificate_sum(const StarBody& K, int d, double alpha, int max_degree) {
    HarmonicSum h = rho_power_hsum(K, d, max_degree);
    return cosine_transform(h, alpha + 1.0 - K.N);
}

}  // namespace

CertificateReport positivity_certificate(const StarBody& K, int d, double alpha,
                                         const ThetaGrid& grid, int max_degree) {
    HarmonicSum cert = certificate_sum(K, d, alpha, max_degree);
    CertificateReport rep;
    rep.alpha = alpha;
    rep.max_degree = max_degree;
    rep.min_value = 1e300;
    std::vector<double> vals =
        kernels::map_grid(grid.points.size(), [&](uint64_t i) { return cert.eval(grid.points[i]); });
    for (size_t i = 0; i < vals.size(); ++i)
        if (vals[i] < rep.min_value) {
            rep.min_value = vals[i];
            rep.argmin = grid.points[i];
        }
    return rep;
}

IntersectionBodyReport intersection_body_test(const StarBody& K, double lambda,
                                              const ThetaGrid& grid, int max_degree) {
    const int N = K.N;
    if (!(lambda > 0.0 && lambda < N))
        throw std::domain_error("intersection_body_test: 0 < lambda < N required");
    require_cosine_alpha(1.0 + lambda - N);
    HarmonicSum h = rho_power_hsum(K, lambda, max_degree);
    HarmonicSum t = cosine_transform(h, 1.0 + lambda - N);

    IntersectionBodyReport rep;
    rep.lambda = lambda;
    rep.min_value = 1e300;
    for (const Vec& x : grid.points) {
        double v = t.eval(x);
        if (v < rep.min_value) {
            rep.min_value = v;
            rep.argmin = x;
        }
    }
    // projection-error band: sup-norm residual of the expansion, amplified by
    // the largest multiplier in play
    auto rho_l = [&](const Vec& x) { return std::pow(K.rho(x), lambda); };
    double resid = projection_residual(h, rho_l, 1024);
    double worst_mult = 0.0;
    for (int j = 0; j <= max_degree; j += 2)
        worst_mult = std::max(worst_mult, std::abs(funk_hecke_multiplier(N, 1.0 + lambda - N, j)));
    rep.band = 3.0 * resid * worst_mult;
    if (rep.min_value > rep.band)
        rep.verdict = Verdict::Consistent;
    else if (rep.min_value < -rep.band)
        rep.verdict = Verdict::Counterexample;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

namespace {

struct PsiCandidate {
    HarmonicSum psi;
    double pairing = 0.0;
};

// mean over the grid of f * g
double grid_pairing(const ThetaGrid& grid, const HarmonicSum& a, const HarmonicSum& b) {
    double s = 0.0;
    for (const Vec& x : grid.points) s += a.eval(x) * b.eval(x);
    return s / static_cast<double>(grid.points.size());
}

// Zonal dictionary: squared degree-<=deg/2 projections of bump profiles about
// the argmin axis, followed by the minimum-Rayleigh squared harmonic.
std::vector<PsiCandidate> psi_dictionary_zonal(const StarBody& L, const HarmonicSum& cert,
                                               const Vec& axis, int psi_degree,
                                               const ThetaGrid& grid) {
    const int N = L.N;
    const int gdeg = psi_degree / 2;
    std::vector<PsiCandidate> out;
    double tstar = 1.0;
    {
        // argmin location along the axis profile
        double best = 1e300;
        for (int k = 0; k <= 400; ++k) {
            double t = -1.0 + 2.0 * k / 400.0;
            Vec th = Vec(N, 0.0);
            // evaluate certificate on the zonal profile via a point with theta.axis = t
            // (certificate of a zonal body is zonal about the same axis)
            th = scaled(axis, t);
            double s = std::sqrt(std::max(0.0, 1.0 - t * t));
            // complete with an arbitrary orthogonal direction
            Mat acol(N, 1);
            acol.set_col(0, axis);
            Mat B = complete_orthonormal_basis(acol);
            for (int i = 0; i < N; ++i) th[i] += s * B(i, 0);
            double v = cert.eval(th);
            if (v < best) {
                best = v;
                tstar = t;
            }
        }
    }
    double ang_star = std::acos(std::clamp(std::abs(tstar), 0.0, 1.0));
    for (double w : {0.9, 0.7, 0.5, 0.4}) {
        auto bump_sqrt = [ang_star, w](double t) {
            double ang = std::acos(std::clamp(std::abs(t), 0.0, 1.0));
            double z = 1.0 - (ang - ang_star) * (ang - ang_star) / (w * w);
            return std::max(z, 0.0);
        };
        HarmonicSum g = zonal_expand(N, axis, bump_sqrt, gdeg, true);
        HarmonicSum psi = zonal_product(g, g, psi_degree);
        PsiCandidate cand;
        cand.psi = psi;
        cand.pairing = grid_pairing(grid, cert, psi);
        out.push_back(std::move(cand));
    }
    // minimum-Rayleigh squared harmonic over even zonal degrees <= gdeg
    {
        Rule1D r = latitude_rule(N, 400);
        std::vector<int> degs;
        for (int j = 0; j <= gdeg; j += 2) degs.push_back(j);
        const int m = static_cast<int>(degs.size());
        // certificate profile along the axis
        Mat acol(N, 1);
        acol.set_col(0, axis);
        Mat B = complete_orthonormal_basis(acol);
        auto cert_profile = [&](double t) {
            Vec th = scaled(axis, t);
            double s = std::sqrt(std::max(0.0, 1.0 - t * t));
            for (int i = 0; i < N; ++i) th[i] += s * B(i, 0);
            return cert.eval(th);
        };
        std::vector<double> cp(r.x.size());
        for (size_t k = 0; k < r.x.size(); ++k) cp[k] = cert_profile(r.x[k]);
        auto entry = [&](int a, int b, bool with_cert) {
            double s = 0.0;
            for (size_t k = 0; k < r.x.size(); ++k) {
                double v = gegenbauer(N, degs[a], r.x[k]) * gegenbauer(N, degs[b], r.x[k]);
                s += r.w[k] * (with_cert ? cp[k] * v : v);
            }
            return s;
        };
        // generalized eigenproblem via Cholesky of the Gram matrix
        Mat A(m, m), G(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                A(a, b) = entry(a, b, true);
                G(a, b) = entry(a, b, false);
            }
        // power iteration on (G^{-1} A) shifted to find the minimum eigenvector
        // small m: do a dense Jacobi-free approach via inverse iteration on A - sigma G
        // simple approach: scan Rayleigh quotient over random directions, then refine
        Rng rng(2024);
        Vec best_v;
        double best_q = 1e300;
        for (int it = 0; it < 4000; ++it) {
            Vec v(m);
            for (int i = 0; i < m; ++i) v[i] = rng.next_gaussian();
            double num = 0.0, den = 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    num += v[a] * A(a, b) * v[b];
                    den += v[a] * G(a, b) * v[b];
                }
            double q = num / den;
            if (q < best_q) {
                best_q = q;
                best_v = v;
            }
        }
        // local refinement by coordinate descent
        for (int round = 0; round < 200; ++round) {
            bool improved = false;
            for (int i = 0; i < m; ++i)
                for (double step : {0.3, -0.3, 0.1, -0.1, 0.03, -0.03}) {
                    Vec v = best_v;
                    v[i] += step;
                    double num = 0.0, den = 0.0;
                    for (int a = 0; a < m; ++a)
                        for (int b = 0; b < m; ++b) {
                            num += v[a] * A(a, b) * v[b];
                            den += v[a] * G(a, b) * v[b];
                        }
                    if (den <= 0.0) continue;
                    double q = num / den;
                    if (q < best_q - 1e-15) {
                        best_q = q;
                        best_v = v;
                        improved = true;
                    }
                }
            if (!improved) break;
        }
        if (!best_v.empty()) {
            HarmonicSum g;
            g.N = N;
            for (int a = 0; a < m; ++a) {
                if (std::abs(best_v[a]) < 1e-14) continue;
                HTerm t;
                t.kind = HTerm::Kind::Zonal;
                t.degree = degs[a];
                t.coeff = best_v[a];
                t.axis = axis;
                g.terms.push_back(t);
            }
            // sup-normalize on [-1,1]
            double sup = 1e-300;
            for (int k = 0; k <= 1000; ++k) {
                double t = -1.0 + 2.0 * k / 1000.0;
                double v = 0.0;
                for (const auto& term : g.terms) v += term.coeff * gegenbauer(N, term.degree, t);
                sup = std::max(sup, std::abs(v));
            }
            g = g.scaled(1.0 / sup);
            HarmonicSum psi = zonal_product(g, g, psi_degree);
            PsiCandidate cand;
            cand.psi = psi;
            cand.pairing = grid_pairing(grid, cert, psi);
            out.push_back(std::move(cand));
        }
    }
    return out;
}

// Block dictionary: minimum-Rayleigh squared block-invariant harmonic, exact
// Dirichlet-moment arithmetic.
std::vector<PsiCandidate> psi_dictionary_block(const BlockStructure& bs, const HarmonicSum& cert,
                                               int psi_degree, const ThetaGrid& grid) {
    std::vector<PsiCandidate> out;
    const BlockHarmonicBasis& basis = BlockHarmonicBasis::get(bs, psi_degree / 2);
    // certificate as a block polynomial
    MPoly phi = MPoly::constant(bs.nblocks(), 0.0);
    for (const auto& t : cert.terms) {
        if (t.kind != HTerm::Kind::Block) return out;  // dictionary needs block data
        phi += t.p;
    }
    const int m = basis.size();
    std::vector<MPoly> e;
    for (int i = 0; i < m; ++i)
        if (basis.degree(i) <= psi_degree / 2 * 2) e.push_back(basis.element(i));
    const int mm = static_cast<int>(e.size());
    Mat A(mm, mm);
    for (int a = 0; a < mm; ++a)
        for (int b = 0; b < mm; ++b) A(a, b) = basis.inner(phi * e[a], e[b]);
    // basis is orthonormal: plain symmetric eigen problem; power iteration on
    // (cI - A) for the smallest eigenvalue
    double shift = 0.0;
    for (int a = 0; a < mm; ++a) shift = std::max(shift, std::abs(A(a, a)) + 1.0);
    Rng rng(7);
    Vec v(mm);
    for (int i = 0; i < mm; ++i) v[i] = rng.next_gaussian();
    for (int it = 0; it < 4000; ++it) {
        Vec nv(mm, 0.0);
        for (int a = 0; a < mm; ++a) {
            double s = shift * v[a];
            for (int b = 0; b < mm; ++b) s -= A(a, b) * v[b];
            nv[a] = s;
        }
        double nn = norm(nv);
        if (nn == 0.0) break;
        v = scaled(nv, 1.0 / nn);
    }
    MPoly g = MPoly::constant(bs.nblocks(), 0.0);
    for (int a = 0; a < mm; ++a) {
        MPoly t = e[a];
        t *= v[a];
        g += t;
    }
    HarmonicSum psi = block_expand(bs, g * g, psi_degree);
    // sup-normalize over the grid
    double sup = 1e-300;
    for (const Vec& x : grid.points) sup = std::max(sup, std::abs(psi.eval(x)));
    psi = psi.scaled(1.0 / sup);
    PsiCandidate cand;
    cand.psi = psi;
    cand.pairing = grid_pairing(grid, cert, psi);
    out.push_back(std::move(cand));
    return out;
}

}  // namespace

SearchResult counterexample_search(const StarBody& L, const VectorFieldSystem& sys, int n,
                                   double alpha, const ThetaGrid& grid, const SearchOpts& opts) {
    const int N = L.N;
    const int d = sys.d;
    if (N != d * n) throw std::invalid_argument("counterexample_search: N = d n required");
    SearchResult res;
    res.certificate = positivity_certificate(L, d, alpha, grid, opts.compare.max_degree);
    if (res.certificate.min_value >= 0.0) {
        res.refused = true;
        res.note = "positivity certificate is nonnegative on the grid; no counterexample from this recipe";
        return res;
    }

    HarmonicSum cert = certificate_sum(L, d, alpha, opts.compare.max_degree);

    std::vector<PsiCandidate> cands;
    if (L.zonal)
        cands = psi_dictionary_zonal(L, cert, L.zonal_axis, opts.psi_degree, grid);
    else if (!cert.terms.empty() && cert.terms.front().kind == HTerm::Kind::Block)
        cands = psi_dictionary_block(cert.terms.front().bs, cert, opts.psi_degree, grid);

    // keep candidates with nonnegative psi and negative pairing, best pairing first
    std::vector<PsiCandidate> good;
    for (auto& c : cands) {
        double mn = 0.0;
        for (const Vec& x : grid.points) mn = std::min(mn, c.psi.eval(x));
        if (mn < -1e-10) continue;
        if (c.pairing < 0.0) good.push_back(std::move(c));
    }
    std::sort(good.begin(), good.end(),
              [](const PsiCandidate& a, const PsiCandidate& b) { return a.pairing < b.pairing; });
    if (good.empty()) {
        res.verdict = Verdict::Inconclusive;
        res.note =
            "certificate is negative but no admissible psi pairs negatively at this truncation "
            "degree; negativity reach limit documented";
        return res;
    }

    HarmonicSum l_pow = rho_power_hsum(L, N - d, opts.compare.max_degree);
    for (const auto& cand : good) {
        HarmonicSum mpsi = cosine_transform(cand.psi, alpha + 1.0 - N);
        for (double eps = opts.eps_start; eps >= opts.eps_min; eps *= opts.eps_factor) {
            HarmonicSum kpow = l_pow;
            kpow += mpsi.scaled(-eps);
            StarBody K;
            try {
                K = body_from_power_hsum(N, N - d, kpow, L.symmetry);
            } catch (const std::domain_error&) {
                continue;  // positivity failed at this eps
            }
            if (convexity_check(K, opts.convexity_trials, opts.seed)) continue;
            ComparisonReport rep = bp_compare(K, L, d, grid, opts.compare);
            if (rep.verdict == Verdict::Counterexample) {
                res.eps = eps;
                res.pairing = cand.pairing;
                res.psi = cand.psi;
                res.K = K;
                res.report = rep;
                res.verdict = Verdict::Counterexample;
                return res;
            }
        }
    }
    res.verdict = Verdict::Inconclusive;
    res.note = "eps schedule exhausted without a certified counterexample";
    return res;
}

ComparisonReport dm_comparison(const StarBody& K, const StarBody& L, int d, int m,
                               const ThetaGrid& grid, const CompareOpts& opts) {
    const int N = K.N;
    int two_m = 2 * m;
    if (!(two_m >= std::max(N - 2 * d - 2, 0) && two_m < N - d))
        throw std::domain_error("dm_comparison: need max(N-2d-2, 0) <= 2m < N-d");
    require_dm_admissible(N, d, m);

    ComparisonReport rep;
    rep.grid_size = static_cast<int>(grid.points.size());
    rep.seed = opts.seed;
    double c = section_identity_constant(N, d);
    HarmonicSum hk = cosine_transform(rho_power_hsum(K, N - d, opts.max_degree), 1.0 - d - 2 * m);
    HarmonicSum hl = cosine_transform(rho_power_hsum(L, N - d, opts.max_degree), 1.0 - d - 2 * m);
    const auto& pts = grid.points;
    rep.s_K = kernels::map_grid(pts.size(), [&](uint64_t i) { return c * hk.eval(pts[i]); });
    rep.s_L = kernels::map_grid(pts.size(), [&](uint64_t i) { return c * hl.eval(pts[i]); });
    double scale = 0.0;
    for (double v : rep.s_L) scale = std::max(scale, std::abs(v));
    rep.margin_tolerance = opts.det_tol * std::max(1.0, scale);
    rep.margins.resize(pts.size());
    rep.worst_margin = 1e300;
    for (size_t i = 0; i < pts.size(); ++i) {
        rep.margins[i] = rep.s_L[i] - rep.s_K[i];
        rep.worst_margin = std::min(rep.worst_margin, rep.margins[i]);
        if (rep.margins[i] < -rep.margin_tolerance) ++rep.violations;
    }
    QuadOpts vq;
    vq.samples = opts.volume_samples;
    vq.seed = opts.seed;
    rep.vol_K = volume(K, vq);
    rep.vol_L = volume(L, vq);
    rep.vol_gap = volume_difference(K, L, opts.volume_samples, opts.seed);
    if (rep.violations > 0)
        rep.verdict = Verdict::Inconclusive;
    else if (rep.vol_gap.value >= 3.0 * rep.vol_gap.se && rep.vol_gap.value > 0.0)
        rep.verdict = Verdict::Counterexample;
    else
        rep.verdict = Verdict::Consistent;
    return rep;
}

}  // namespace bpgeo
