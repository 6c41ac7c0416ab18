#include <doctest.h>

#include <cmath>

#include "bpgeo/kernels.hpp"
#include "bpgeo/linalg.hpp"
#include "bpgeo/quadsphere.hpp"
#include "bpgeo/rng.hpp"
#include "bpgeo/specfun.hpp"

using namespace bpgeo;

TEST_CASE("sphere areas") {
    CHECK(sphere_area(2) == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(4 * kPi).epsilon(1e-14));
    CHECK(sphere_area(4) == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("gauss-legendre exactness") {
    Rule1D r = gauss_legendre(12);
    double s0 = 0, s2 = 0, s10 = 0;
    for (size_t i = 0; i < r.x.size(); ++i) {
        s0 += r.w[i];
        s2 += r.w[i] * r.x[i] * r.x[i];
        s10 += r.w[i] * std::pow(r.x[i], 10);
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(s10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("gauss-jacobi against beta moments") {
    // int_{-1}^1 (1-x)^a (1+x)^b x^2 dx with a=0.5, b=-0.5, cross-checked via
    // the Beta function after x = 2u-1
    double a = 0.5, b = -0.5;
    Rule1D r = gauss_jacobi(24, a, b);
    double got = 0;
    for (size_t i = 0; i < r.x.size(); ++i) got += r.w[i] * r.x[i] * r.x[i];
    auto B = [](double x, double y) { return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y); };
    // int u^{b} (1-u)^{a} (2u-1)^2 * 2^{a+b+1} du over [0,1]
    double expect = std::pow(2.0, a + b + 1) *
                    (4 * B(b + 3, a + 1) - 4 * B(b + 2, a + 1) + B(b + 1, a + 1));
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("power kernel integrator") {
    // int_0^1 t^{alpha-1} (1 - t^2) dt = 1/alpha - 1/(alpha + 2)
    for (double alpha : {0.25, 0.4, 0.8, 1.0, 1.7}) {
        double got = integrate_power_kernel(alpha, [](double t) { return 1.0 - t * t; });
        double expect = 1.0 / alpha - 1.0 / (alpha + 2.0);
        CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("gegenbauer basics") {
    // N=3 reduces to Legendre: P_2(t) = (3t^2-1)/2
    for (double t : {-0.7, 0.0, 0.3, 1.0})
        CHECK(gegenbauer(3, 2, t) == doctest::Approx(0.5 * (3 * t * t - 1)).epsilon(1e-13));
    CHECK(gegenbauer(5, 8, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gegenbauer(4, 3, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orthonormal completion is deterministic and orthonormal") {
    Rng rng(42);
    for (int rep = 0; rep < 10; ++rep) {
        Vec v = rng.next_sphere(7);
        Mat f(7, 1);
        f.set_col(0, v);
        Mat H1 = complete_orthonormal_basis(f);
        Mat H2 = complete_orthonormal_basis(f);
        CHECK(orthonormality_defect(H1) < 1e-12);
        CHECK(max_abs(H1 - H2) == 0.0);  // bit-identical completion
        Mat cross = f.transposed() * H1;
        CHECK(cross.max_abs() < 1e-12);
    }
}

TEST_CASE("chunked reduction: parallel equals serial bitwise") {
    auto f = [](uint64_t i) { return std::sin(0.001 * static_cast<double>(i)); };
    auto a = kernels::reduce_mean(100000, f, kernels::Mode::Parallel);
    auto b = kernels::reduce_mean_serial(100000, f);
    CHECK(a.mean == b.mean);
    CHECK(a.se == b.se);
}

TEST_CASE("product sphere rule integrates symmetric monomials") {
    for (int N : {2, 3, 4}) {
        SphereRule r = product_sphere_rule(N, 16);
        double s0 = 0, s1 = 0;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            s0 += r.w[i];
            s1 += r.w[i] * r.nodes[i][0] * r.nodes[i][0];
        }
        CHECK(s0 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(s1 == doctest::Approx(1.0 / N).epsilon(1e-12));
    }
}

TEST_CASE("mean of |theta_1| on S^2 equals 1/2") {
    // latitude density on S^2 is uniform in t, so the mean is int_0^1 t dt = 1/2
    SphereRule r = product_sphere_rule(3, 100);
    double s = 0;
    for (size_t i = 0; i < r.nodes.size(); ++i) s += r.w[i] * std::abs(r.nodes[i][0]);
    CHECK(s == doctest::Approx(0.5).epsilon(2e-4));
}

TEST_CASE("monte carlo sphere mean agrees with deterministic within 3 se") {
    for (int N : {3, 4}) {
        auto f = [](const Vec& x) { return x[0] * x[0] * x[1] * x[1]; };
        SphereRule det = product_sphere_rule(N, 16);
        double exact = det.mean(f);
        auto mc = mc_sphere_mean(N, 200000, 2024, f);
        CHECK(std::abs(mc.mean - exact) < 3.0 * mc.se + 1e-12);
        // deterministic under the seed, independent of threading
        auto mc2 = mc_sphere_mean(N, 200000, 2024, f, kernels::Mode::Serial);
        CHECK(mc.mean == mc2.mean);
    }
}

TEST_CASE("low-discrepancy sphere grid is unit-norm and balanced") {
    auto pts = low_discrepancy_sphere(5, 4096);
    CHECK(pts.size() == 4096);
    Vec m(5, 0.0);
    for (const auto& p : pts) {
        CHECK(std::abs(norm(p) - 1.0) < 1e-12);
        axpy(m, 1.0 / 4096.0, p);
    }
    CHECK(norm(m) < 0.05);
}

TEST_CASE("deterministic sphere quadrature rejects N > 4") {
    CHECK_THROWS(sphere_quadrature_deterministic(5, 16));
    CHECK_NOTHROW(sphere_quadrature_deterministic(4, 16));
}
