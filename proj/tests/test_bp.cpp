#include <doctest.h>

#include <cmath>

#include "bpgeo/bp.hpp"
#include "bpgeo/config.hpp"
#include "bpgeo/rng.hpp"
#include "bpgeo/specfun.hpp"

using namespace bpgeo;

namespace {

// the rounded two-block l^4 revolution body in R^5: the negative-certificate
// seed for the d=1 pipeline
StarBody l4_revolution_body(int N = 5, double p = 4.0, double mu = 0.1) {
    Vec axis(N, 0.0);
    axis[0] = 1.0;
    double nrm = std::pow(1.0 + mu, 1.0 / p);
    auto prof = [p, mu, nrm](double t) {
        double b = std::pow(std::abs(t), p) + std::pow(std::max(0.0, 1.0 - t * t), 0.5 * p) + mu;
        return nrm * std::pow(b, -1.0 / p);
    };
    return body_zonal(N, axis, prof, SymmetryTag{1, N, Chirality::Left});
}

}  // namespace

TEST_CASE("comparison report: nested balls and equal bodies") {
    ThetaGrid grid = make_theta_grid(3, 512);
    CompareOpts opts;
    opts.volume_samples = 100000;
    opts.seed = 3;
    StarBody K = make_ball(3, 1.0), L = make_ball(3, 1.1);
    ComparisonReport rep = bp_compare(K, L, 1, grid, opts);
    CHECK(rep.violations == 0);
    CHECK(rep.verdict == Verdict::Consistent);
    CHECK(rep.vol_K.value < rep.vol_L.value);
    CHECK(rep.vol_gap.value < 0.0);

    ComparisonReport same = bp_compare(K, K, 1, grid, opts);
    CHECK(same.verdict == Verdict::Consistent);
    CHECK(same.worst_margin == 0.0);
    CHECK(same.vol_gap.value == 0.0);
}

TEST_CASE("bp_compare margins are exactly antisymmetric under swap") {
    BlockStructure bs = BlockStructure::equal_blocks(2, 2);
    HarmonicSum pk = HarmonicSum::constant(4, 1.0);
    pk += block_moment_harmonic(bs, 4).scaled(-0.12);
    HarmonicSum pl = HarmonicSum::constant(4, 1.05);
    StarBody K = body_from_power_hsum(4, 2.0, pk, SymmetryTag{2, 2, Chirality::Left});
    StarBody L = body_from_power_hsum(4, 2.0, pl, SymmetryTag{2, 2, Chirality::Left});
    ThetaGrid grid = make_theta_grid(4, 256);
    CompareOpts opts;
    opts.volume_samples = 50000;
    ComparisonReport ab = bp_compare(K, L, 2, grid, opts);
    ComparisonReport ba = bp_compare(L, K, 2, grid, opts);
    REQUIRE(ab.margins.size() == ba.margins.size());
    for (size_t i = 0; i < ab.margins.size(); ++i) CHECK(ab.margins[i] == -ba.margins[i]);
    CHECK(ab.vol_gap.value == -ba.vol_gap.value);
}

TEST_CASE("positivity certificate of the euclidean ball is positive") {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 4}, {2, 2}}) {
        int N = d * n;
        StarBody ball = make_ball(N);
        ThetaGrid grid = make_theta_grid(N, 512);
        CertificateReport rep = positivity_certificate(ball, d, d, grid, 12);
        CHECK(rep.min_value > 0.0);
    }
}

TEST_CASE("certificate scaling: cert(sK) = s^d cert(K), argmin invariant") {
    StarBody L = l4_revolution_body();
    ThetaGrid grid = make_theta_grid(5, 1024);
    CertificateReport a = positivity_certificate(L, 1, 1.0, grid, 20);
    // dilate: rho -> 2 rho through the zonal profile
    StarBody sL = L;
    auto prof = L.zonal_profile;
    sL.rho = [prof, &L](const Vec& x) { return 2.0 * prof(dot(x, L.zonal_axis)); };
    sL.zonal_profile = [prof](double t) { return 2.0 * prof(t); };
    sL.min_radial *= 2.0;
    sL.max_radial *= 2.0;
    CertificateReport b = positivity_certificate(sL, 1, 1.0, grid, 20);
    CHECK(b.min_value == doctest::Approx(2.0 * a.min_value).epsilon(1e-9));
    CHECK(norm(a.argmin) == doctest::Approx(norm(b.argmin)).epsilon(1e-12));
    for (size_t i = 0; i < a.argmin.size(); ++i) CHECK(a.argmin[i] == b.argmin[i]);
}

TEST_CASE("the rounded l^4 revolution body has a negative certificate at alpha = d") {
    StarBody L = l4_revolution_body();
    ThetaGrid grid = make_theta_grid(5, 2048);
    CertificateReport rep = positivity_certificate(L, 1, 1.0, grid, 24);
    CHECK(rep.min_value < -0.1);
    // sign stability under the expansion degree (truncation 16 vs 24)
    CertificateReport rep16 = positivity_certificate(L, 1, 1.0, grid, 16);
    CHECK(rep16.min_value < -0.1);
}

TEST_CASE("intersection body test: balls are members, the seed body is not") {
    for (int N : {3, 4, 5})
        for (double lam : {0.5, 1.0, 2.0}) {
            StarBody ball = make_ball(N);
            ThetaGrid grid = make_theta_grid(N, 512);
            IntersectionBodyReport rep = intersection_body_test(ball, lam, grid, 8);
            CHECK(rep.member());
            CHECK(rep.min_value > 0.0);
        }
    StarBody L = l4_revolution_body();
    ThetaGrid grid = make_theta_grid(5, 2048);
    IntersectionBodyReport rep8 = intersection_body_test(L, 1.0, grid, 8);
    IntersectionBodyReport rep12 = intersection_body_test(L, 1.0, grid, 12);
    CHECK(rep8.verdict == Verdict::Counterexample);  // non-member
    CHECK(rep12.verdict == Verdict::Counterexample);
    CHECK_THROWS(intersection_body_test(L, 5.0, grid, 8));
    CHECK_THROWS(intersection_body_test(L, 0.0, grid, 8));
}

TEST_CASE("counterexample search refuses nonnegative certificates") {
    // d=1, n=3: every convex body tested keeps a nonnegative certificate
    Rng rng(61);
    HarmonicSum h = HarmonicSum::constant(3, 1.0);
    HTerm t;
    t.kind = HTerm::Kind::Zonal;
    t.degree = 2;
    t.coeff = 0.1;
    t.axis = rng.next_sphere(3);
    h.terms.push_back(t);
    StarBody L = body_from_power_hsum(3, 2.0, h, SymmetryTag{1, 3, Chirality::Left});
    VectorFieldSystem sys = vector_field_system(1);
    ThetaGrid grid = make_theta_grid(3, 512);
    SearchOpts opts;
    opts.compare.volume_samples = 50000;
    SearchResult res = counterexample_search(L, sys, 3, 1.0, grid, opts);
    CHECK(res.refused);
    CHECK(res.certificate.min_value >= 0.0);
}

TEST_CASE("counterexample search succeeds at d=1, n=5") {
    StarBody L = l4_revolution_body();
    VectorFieldSystem sys = vector_field_system(1);
    ThetaGrid grid = make_theta_grid(5, 1024);
    SearchOpts opts;
    opts.compare.volume_samples = 4000000;
    opts.compare.seed = 12;
    opts.convexity_trials = 100000;
    SearchResult res = counterexample_search(L, sys, 5, 1.0, grid, opts);
    REQUIRE(!res.refused);
    CHECK(res.verdict == Verdict::Counterexample);
    CHECK(res.certificate.min_value < -0.1);
    CHECK(res.pairing < 0.0);
    CHECK(res.report.violations == 0);
    CHECK(res.report.vol_gap.value > 3.0 * res.report.vol_gap.se);
    // psi stays nonnegative on the grid
    double mn = 0.0;
    for (const Vec& x : grid.points) mn = std::min(mn, res.psi.eval(x));
    CHECK(mn > -1e-10);
    // reproducible under the same seed
    SearchResult res2 = counterexample_search(L, sys, 5, 1.0, grid, opts);
    CHECK(res2.verdict == Verdict::Counterexample);
    CHECK(res2.eps == res.eps);
    CHECK(res2.report.vol_gap.value == res.report.vol_gap.value);
}

TEST_CASE("eps = 0 keeps K = L and the report consistent") {
    StarBody L = l4_revolution_body();
    ThetaGrid grid = make_theta_grid(5, 512);
    CompareOpts opts;
    opts.volume_samples = 100000;
    ComparisonReport rep = bp_compare(L, L, 1, grid, opts);
    CHECK(rep.verdict == Verdict::Consistent);
    CHECK(rep.worst_margin == 0.0);
}

TEST_CASE("dm comparison: guard and m = 0 reduction") {
    BlockStructure bs = BlockStructure::equal_blocks(2, 2);
    HarmonicSum pk = HarmonicSum::constant(4, 1.0);
    pk += block_moment_harmonic(bs, 4).scaled(-0.1);
    StarBody K = body_from_power_hsum(4, 2.0, pk, SymmetryTag{2, 2, Chirality::Left});
    StarBody L = make_ball(4, 1.05);
    ThetaGrid grid = make_theta_grid(4, 256);
    CompareOpts opts;
    opts.volume_samples = 50000;
    // N=4, d=2: max(N-2d-2,0) = 0 <= 2m < 2 forces m = 0
    ComparisonReport rep = dm_comparison(K, L, 2, 0, grid, opts);
    ComparisonReport plain = bp_compare(K, L, 2, grid, opts);
    REQUIRE(rep.margins.size() == plain.margins.size());
    for (size_t i = 0; i < rep.margins.size(); ++i)
        CHECK(rep.margins[i] == doctest::Approx(plain.margins[i]).epsilon(1e-12));
    CHECK_THROWS(dm_comparison(K, L, 2, 1, grid, opts));
}

TEST_CASE("dm route equals the direct multiplier route on harmonic bodies") {
    // criterion-8 style check at (d, N) = (1, 6) and (2, 8), m in {0, 1}
    for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 6}, {2, 4}}) {
        int N = d * n;
        BlockStructure bs = BlockStructure::equal_blocks(n, d);
        HarmonicSum pw = HarmonicSum::constant(N, 1.0);
        pw += block_moment_harmonic(bs, 4).scaled(-0.1);
        StarBody K = body_from_power_hsum(N, static_cast<double>(N - d), pw,
                                          SymmetryTag{d, n, Chirality::Left});
        HarmonicSum base = rho_power_hsum(K, N - d, 12);
        for (int m : {0, 1}) {
            int two_m = 2 * m;
            if (!(two_m >= std::max(N - 2 * d - 2, 0) && two_m < N - d)) continue;
            HarmonicSum via_dm = riesz_dm_transform(cosine_transform(base, 1.0 - d), d, m);
            HarmonicSum direct = cosine_transform(base, 1.0 - d - 2.0 * m);
            Rng rng(63);
            for (int i = 0; i < 8; ++i) {
                Vec x = rng.next_sphere(N);
                CHECK(via_dm.eval(x) == doctest::Approx(direct.eval(x)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("dm scaling under dilation") {
    // S_{sK} = s^{N-d} S_K as functions of theta, and D_m is linear in its
    // argument, so the D_m route scales by s^{N-d} as well (the argmax stays
    // put). Both the multiplier and the finite-difference route agree.
    int d = 1, n = 6, N = 6, m = 1;
    (void)n;
    Vec axis(N, 0.0);
    axis[0] = 1.0;
    HarmonicSum pw = HarmonicSum::constant(N, 1.0);
    HTerm t;
    t.kind = HTerm::Kind::Zonal;
    t.degree = 4;
    t.coeff = -0.1;
    t.axis = axis;
    pw.terms.push_back(t);
    StarBody K = body_from_power_hsum(N, N - d, pw, SymmetryTag{1, 6, Chirality::Left});
    double s = 2.0;
    StarBody sK = body_from_power_hsum(N, N - d, pw.scaled(std::pow(s, N - d)), K.symmetry);
    double c = section_identity_constant(N, d);
    HarmonicSum a = cosine_transform(rho_power_hsum(K, N - d, 12), 1.0 - d - 2.0 * m);
    HarmonicSum b = cosine_transform(rho_power_hsum(sK, N - d, 12), 1.0 - d - 2.0 * m);
    Rng rng(64);
    Vec arga, argb;
    double besta = -1e300, bestb = -1e300;
    for (int i = 0; i < 64; ++i) {
        Vec x = rng.next_sphere(N);
        CHECK(c * b.eval(x) == doctest::Approx(std::pow(s, N - d) * c * a.eval(x)).epsilon(1e-11));
        if (a.eval(x) > besta) {
            besta = a.eval(x);
            arga = x;
        }
        if (b.eval(x) > bestb) {
            bestb = b.eval(x);
            argb = x;
        }
    }
    for (int i = 0; i < N; ++i) CHECK(arga[i] == argb[i]);  // argmax invariant
}

TEST_CASE("positive direction: random invariant convex pairs keep the volume order") {
    // a lighter version of the acceptance sweep: (d, n) in {(1,3), (2,2)},
    // a handful of pairs each
    Rng rng(65);
    for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}}) {
        int N = d * n;
        VectorFieldSystem sys = vector_field_system(d);
        ThetaGrid grid = make_theta_grid(N, 512);
        CompareOpts opts;
        opts.volume_samples = 200000;
        opts.seed = 71;
        for (int trial = 0; trial < 5; ++trial) {
            auto random_body = [&](uint64_t salt) {
                HarmonicSum pw = HarmonicSum::constant(N, 1.0);
                if (d == 1) {
                    HTerm t;
                    t.kind = HTerm::Kind::Zonal;
                    t.degree = 2 + 2 * (salt % 2);
                    t.coeff = 0.12 * (rng.next_double() - 0.5);
                    t.axis = rng.next_sphere(N);
                    pw.terms.push_back(t);
                } else {
                    BlockStructure bs = BlockStructure::equal_blocks(n, d);
                    pw += block_moment_harmonic(bs, 4).scaled(0.12 * (rng.next_double() - 0.5));
                }
                return body_from_power_hsum(N, N - d, pw, SymmetryTag{d, n, Chirality::Left});
            };
            StarBody K = random_body(trial);
            StarBody L = random_body(trial + 100);
            if (convexity_check(K, 20000, 5) || convexity_check(L, 20000, 5)) continue;
            // scale K into section dominance: S_{sK} = s^{N-d} S_K
            ComparisonReport pre = bp_compare(K, L, d, grid, opts);
            double worst_ratio = 1e300;
            for (size_t i = 0; i < pre.s_K.size(); ++i)
                worst_ratio = std::min(worst_ratio, pre.s_L[i] / pre.s_K[i]);
            double scale_pow = worst_ratio * (1.0 - 1e-9);
            HarmonicSum pw_scaled = rho_power_hsum(K, N - d, 12).scaled(scale_pow);
            StarBody Ks = body_from_power_hsum(N, N - d, pw_scaled, K.symmetry);
            ComparisonReport rep = bp_compare(Ks, L, d, grid, opts);
            CHECK(rep.violations == 0);
            // mcor: volume order must follow (no reversal beyond noise)
            CHECK(rep.verdict == Verdict::Consistent);
        }
    }
}

TEST_CASE("negative certificate for a star body of revolution (degree-8 dip)") {
    // rho = 1 - eps G_8 about an axis: the continued transform flips signs
    // strongly at degree 8, so a suitable eps drives the certificate negative
    // while rho stays positive (no convexity claimed here)
    int N = 5;
    Vec axis(N, 0.0);
    axis[0] = 1.0;
    double m0 = funk_hecke_multiplier(N, 1.0 + 1.0 - N, 0);
    double m8 = funk_hecke_multiplier(N, 1.0 + 1.0 - N, 8);
    REQUIRE(m8 > 0.0);
    double eps = 2.0 * m0 / m8;  // well past the sign-flip threshold
    REQUIRE(eps < 1.0);
    HarmonicSum h = HarmonicSum::constant(N, 1.0);
    HTerm t;
    t.kind = HTerm::Kind::Zonal;
    t.degree = 8;
    t.coeff = -eps;
    t.axis = axis;
    h.terms.push_back(t);
    StarBody K = body_from_power_hsum(N, 1.0, h);  // rho itself stored
    ThetaGrid grid = make_theta_grid(N, 2048);
    grid.points.push_back(axis);  // the dip is sharpest at the poles
    CertificateReport rep = positivity_certificate(K, 1, 1.0, grid, 12);
    CHECK(rep.min_value < 0.0);
    CHECK(std::abs(dot(rep.argmin, axis)) > 0.9);  // dip sits at the poles
}

TEST_CASE("dm ordering implies volume ordering on randomized convex trials") {
    // d=1, N=6, m=1: pairs with dominated D_1-transformed sections never show
    // a certified volume reversal
    int d = 1, n = 6, N = 6, m = 1;
    ThetaGrid grid = make_theta_grid(N, 512);
    CompareOpts opts;
    opts.volume_samples = 100000;
    opts.seed = 91;
    Rng rng(92);
    int done = 0, violations = 0;
    while (done < 30) {
        auto mk = [&](double amp) {
            HarmonicSum pw = HarmonicSum::constant(N, 1.0);
            HTerm t;
            t.kind = HTerm::Kind::Zonal;
            t.degree = 2 + 2 * (rng.next_u64() % 2);
            t.coeff = amp * (rng.next_double() - 0.5);
            t.axis = rng.next_sphere(N);
            pw.terms.push_back(t);
            return body_from_power_hsum(N, N - d, pw, SymmetryTag{d, n, Chirality::Left});
        };
        StarBody K, L;
        try {
            K = mk(0.12);
            L = mk(0.12);
        } catch (const std::domain_error&) {
            continue;
        }
        if (convexity_check(K, 10000, 5) || convexity_check(L, 10000, 5)) continue;
        ComparisonReport pre = dm_comparison(K, L, d, m, grid, opts);
        double worst_ratio = 1e300;
        for (size_t i = 0; i < pre.s_K.size(); ++i) {
            if (!(pre.s_K[i] > 0.0)) { worst_ratio = -1.0; break; }
            worst_ratio = std::min(worst_ratio, pre.s_L[i] / pre.s_K[i]);
        }
        if (!(worst_ratio > 0.0)) continue;
        HarmonicSum pw = rho_power_hsum(K, N - d, opts.max_degree)
                             .scaled(worst_ratio * (1.0 - 1e-9));
        StarBody Ks = body_from_power_hsum(N, N - d, pw, K.symmetry);
        ComparisonReport rep = dm_comparison(Ks, L, d, m, grid, opts);
        if (rep.violations > 0) continue;
        ++done;
        if (rep.verdict == Verdict::Counterexample) ++violations;
    }
    CHECK(violations == 0);
}
