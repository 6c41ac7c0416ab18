#include <doctest.h>

#include <cmath>

#include "bpgeo/bodies.hpp"
#include "bpgeo/config.hpp"
#include "bpgeo/rng.hpp"
#include "bpgeo/specfun.hpp"

using namespace bpgeo;

TEST_CASE("ball volumes") {
    // vol(B^3) = 4 pi / 3, deterministic rule
    StarBody b3 = make_ball(3);
    QuadOpts det;
    det.deterministic = true;
    det.level = 16;
    CHECK(volume(b3, det).value == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
    // vol(B^8) = pi^4 / 24, Monte Carlo with standard error
    StarBody b8 = make_ball(8);
    QuadOpts mc;
    mc.samples = 200000;
    mc.seed = 5;
    auto v = volume(b8, mc);
    CHECK(v.value == doctest::Approx(std::pow(kPi, 4) / 24.0).epsilon(1e-9));
    CHECK(v.se == 0.0);  // constant integrand
}

TEST_CASE("planar lp disc area against the Beta-integral oracle") {
    // area of the l^4 unit disc: (2 Gamma(5/4))^2 / Gamma(3/2) ~ 3.708149
    StarBody disc = ball_block_lp(2, 1, 4.0);
    QuadOpts det;
    det.deterministic = true;
    det.level = 200;
    double oracle = std::pow(2.0 * std::tgamma(1.25), 2) / std::tgamma(1.5);
    CHECK(volume(disc, det).value == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("block lp radial values") {
    StarBody b = ball_block_lp(2, 4, 2.0);
    Rng rng(31);
    for (int i = 0; i < 10; ++i) CHECK(b.rho(rng.next_sphere(8)) == doctest::Approx(1.0).epsilon(1e-13));
    StarBody c = ball_block_lp(2, 4, 4.0);
    Vec one_block(8, 0.0);
    one_block[2] = 1.0;
    CHECK(c.rho(one_block) == doctest::Approx(1.0).epsilon(1e-13));
    Vec split(8, 0.0);
    split[0] = split[4] = 1.0 / std::sqrt(2.0);
    CHECK(c.rho(split) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-13));
    CHECK_THROWS(ball_block_lp(2, 1, 0.5));
    CHECK_NOTHROW(ball_block_lp(2, 1, 0.5, true));
}

TEST_CASE("gauge properties") {
    StarBody ball = make_ball(4);
    Rng rng(32);
    Vec x = rng.next_sphere(4);
    x = scaled(x, 2.7);
    CHECK(gauge(ball, x) == doctest::Approx(norm(x)).epsilon(1e-13));
    StarBody c = ball_block_lp(2, 2, 4.0);
    Vec th = rng.next_sphere(4);
    Vec boundary = scaled(th, c.rho(th));
    CHECK(gauge(c, boundary) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gauge(c, scaled(boundary, 2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gauge(c, Vec(4, 0.0)) == 0.0);
    // triangle inequality on sampled pairs for a convex body
    for (int i = 0; i < 2000; ++i) {
        Vec a = scaled(rng.next_sphere(4), 0.5 + rng.next_double());
        Vec b = scaled(rng.next_sphere(4), 0.5 + rng.next_double());
        Vec s(4);
        for (int k = 0; k < 4; ++k) s[k] = a[k] + b[k];
        CHECK(gauge(c, s) <= gauge(c, a) + gauge(c, b) + 1e-9);
    }
}

TEST_CASE("perturbed body basics") {
    StarBody ball = make_ball(5);
    auto phi_const = SphericalFunction::harmonic(HarmonicSum::constant(5, 0.3));
    // eps = 0 leaves the body unchanged
    StarBody same = perturbed_body(ball, 0.0, phi_const, 1);
    Rng rng(33);
    for (int i = 0; i < 10; ++i) {
        Vec x = rng.next_sphere(5);
        CHECK(same.rho(x) == doctest::Approx(1.0).epsilon(1e-13));
    }
    // constant phi shrinks the ball to radius (1 - eps c)^{1/(N-d)}
    StarBody small = perturbed_body(ball, 0.5, phi_const, 1);
    double expect = std::pow(1.0 - 0.5 * 0.3, 0.25);
    for (int i = 0; i < 10; ++i)
        CHECK(small.rho(rng.next_sphere(5)) == doctest::Approx(expect).epsilon(1e-13));
    // positivity violation is rejected with the offending direction
    auto big = SphericalFunction::harmonic(HarmonicSum::constant(5, 3.0));
    CHECK_THROWS(perturbed_body(ball, 0.5, big, 1));
    // a degree-4 zonal perturbation stays convex at small eps
    Vec axis(5, 0.0);
    axis[4] = 1.0;
    HarmonicSum z4;
    z4.N = 5;
    HTerm t;
    t.kind = HTerm::Kind::Zonal;
    t.degree = 4;
    t.coeff = 1.0;
    t.axis = axis;
    z4.terms.push_back(t);
    StarBody k = perturbed_body(ball, 0.08, SphericalFunction::harmonic(z4), 1);
    CHECK(!convexity_check(k, 100000, 7));
}

TEST_CASE("convexity witness appears for p < 1 star bodies") {
    StarBody ball = make_ball(3);
    CHECK(!convexity_check(ball, 50000, 3));
    StarBody convex = ball_block_lp(3, 1, 4.0);
    CHECK(!convexity_check(convex, 50000, 3));
    StarBody star = ball_block_lp(3, 1, 0.5, true);
    auto w = convexity_check(star, 50000, 3);
    REQUIRE(w.has_value());
    CHECK(w->midpoint_gauge > 1.0 + 1e-9);
}

TEST_CASE("volume monotone under pointwise radial domination") {
    StarBody small = ball_block_lp(2, 2, 4.0);
    StarBody big = make_ball(4, 1.2);  // contains the block ball (max radial ~ 2^{1/4} < 1.2)
    QuadOpts mc;
    mc.samples = 100000;
    mc.seed = 11;
    auto vs = volume(small, mc), vb = volume(big, mc);
    CHECK(vs.value + 3 * (vs.se + vb.se) < vb.value);
}

TEST_CASE("symmetrize: the S^1 orbit average of theta_1^2") {
    // d=2, f(theta) = theta_1^2 on S^3 averages to (theta_1^2 + theta_2^2)/2
    VectorFieldSystem sys = vector_field_system(2);
    auto f = SphericalFunction::evaluator(4, [](const Vec& x) { return x[0] * x[0]; }, Parity::Even);
    auto g = symmetrize(f, sys, 2, 64);
    Rng rng(34);
    for (int i = 0; i < 10; ++i) {
        Vec x = rng.next_sphere(4);
        CHECK(g(x) == doctest::Approx(0.5 * (x[0] * x[0] + x[1] * x[1])).epsilon(1e-10));
    }
    // already invariant functions are fixed points; nonnegativity is preserved
    auto inv = SphericalFunction::evaluator(
        4, [](const Vec& x) { return x[0] * x[0] + x[1] * x[1]; }, Parity::Even);
    auto ginv = symmetrize(inv, sys, 2, 64);
    for (int i = 0; i < 5; ++i) {
        Vec x = rng.next_sphere(4);
        CHECK(ginv(x) == doctest::Approx(inv(x)).epsilon(1e-10));
        CHECK(g(x) >= 0.0);
    }
}

TEST_CASE("g-invariance audit distinguishes invariant from broken bodies") {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {4, 2}}) {
        VectorFieldSystem sys = vector_field_system(d);
        StarBody K = ball_block_lp(n, d, 4.0);
        CHECK(g_invariance_defect(K.rho, K.N, sys, n, 16, 77) < 1e-12);
        // break one block: weight the first coordinate inside the block
        auto broken = [d](const Vec& x) {
            double s = 0.0;
            for (size_t j = 0; j < x.size() / d; ++j) {
                double b = 0.0;
                for (int i = 0; i < d; ++i) {
                    double w = (i == 0) ? 1.3 : 1.0;
                    b += w * x[j * d + i] * x[j * d + i];
                }
                s += b * b;
            }
            return std::pow(s, -0.25);
        };
        CHECK(g_invariance_defect(broken, d * n, sys, n, 16, 77) > 1e-3);
    }
}

TEST_CASE("theorem-level round trip: invariant radial passes, broken fails") {
    // a body built from a G-invariant radial function carries its tag; the
    // same construction with one block's symmetry broken must fail the audit
    VectorFieldSystem sys = vector_field_system(2);
    BlockStructure bs = BlockStructure::equal_blocks(2, 2);
    HarmonicSum y = block_moment_harmonic(bs, 4);
    HarmonicSum pow = HarmonicSum::constant(4, 1.0);
    pow += y.scaled(-0.2);
    StarBody K = body_from_power_hsum(4, 2.0, pow, SymmetryTag{2, 2, Chirality::Left});
    CHECK(g_invariance_defect(K.rho, 4, sys, 2, 16, 78) < 1e-12);
}

TEST_CASE("rho power expansions agree across routes") {
    // zonal body: rho^3 expanded zonally matches pointwise values
    int N = 5;
    Vec axis(N, 0.0);
    axis[0] = 1.0;
    auto prof = [](double t) { return std::pow(1.0 + 0.3 * t * t, -0.25); };
    StarBody K = body_zonal(N, axis, prof);
    HarmonicSum h = rho_power_hsum(K, 3.0, 20);
    Rng rng(35);
    for (int i = 0; i < 10; ++i) {
        Vec x = rng.next_sphere(N);
        CHECK(h.eval(x) == doctest::Approx(std::pow(K.rho(x), 3.0)).epsilon(1e-9));
    }
    // stored block sums raised to integer powers
    BlockStructure bs = BlockStructure::equal_blocks(2, 4);
    HarmonicSum y = block_moment_harmonic(bs, 4);
    HarmonicSum base = HarmonicSum::constant(8, 1.0);
    base += y.scaled(-0.25);
    StarBody B = body_from_power_hsum(8, 2.0, base, SymmetryTag{4, 2, Chirality::Left});
    HarmonicSum h6 = rho_power_hsum(B, 6.0, 12);
    for (int i = 0; i < 10; ++i) {
        Vec x = rng.next_sphere(8);
        CHECK(h6.eval(x) == doctest::Approx(std::pow(B.rho(x), 6.0)).epsilon(1e-9));
    }
}

TEST_CASE("paired volume difference is exactly antisymmetric") {
    StarBody K = ball_block_lp(2, 2, 4.0);
    StarBody L = make_ball(4, 1.05);
    auto ab = volume_difference(K, L, 50000, 9);
    auto ba = volume_difference(L, K, 50000, 9);
    CHECK(ab.value == -ba.value);
    CHECK(ab.se == ba.se);
}

TEST_CASE("body report carries volume, radial range, convexity") {
    StarBody K = ball_block_lp(2, 2, 4.0);
    QuadOpts mc;
    mc.samples = 50000;
    mc.seed = 2;
    BodyReport r = body_report(K, mc, 20000, 3);
    CHECK(r.volume.value > 0.0);
    CHECK(r.min_radial <= r.max_radial);
    CHECK(r.min_radial == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(!r.convexity_witness);
}

TEST_CASE("gauge homogeneity under algebra scalars for tagged bodies") {
    // p(lambda x) = |lambda| p(x) with quaternionic lambda = |lambda| omega:
    // holds exactly when the body is invariant under the block rotations
    StarBody K = ball_block_lp(2, 4, 4.0);
    VectorFieldSystem sys = vector_field_system(4, Chirality::Left);
    Rng rng(36);
    for (int i = 0; i < 50; ++i) {
        Vec x = scaled(rng.next_sphere(8), 0.3 + rng.next_double());
        Quaternion om{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian(),
                      rng.next_gaussian()};
        double mag = om.norm();
        om = (1.0 / mag) * om;
        double lam_abs = 0.25 + 2.0 * rng.next_double();
        Vec lx = group_element(sys, 2, om.as_vec()).matrix * x;
        lx = scaled(lx, lam_abs);
        CHECK(gauge(K, lx) == doctest::Approx(lam_abs * gauge(K, x)).epsilon(1e-11));
    }
}
