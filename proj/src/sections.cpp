#include "bpgeo/sections.hpp"

#include <cmath>

#include "bpgeo/quadsphere.hpp"
#include "bpgeo/rng.hpp"
#include "bpgeo/specfun.hpp"

namespace bpgeo {

VolumeEstimate section_volume(const StarBody& K, const SectionFrame& frame, const QuadOpts& q) {
    const int N = K.N;
    const int d = frame.frame.cols();
    const int i = N - d;
    if (i < 2) throw std::invalid_argument("section_volume: N - d >= 2 required");
    double c = sphere_area(i) / i;
    auto f = [&](const Vec& x) { return std::pow(K.rho(x), i); };
    VolumeEstimate v;
    if (q.deterministic && i <= 4) {
        SphereRule sub = product_sphere_rule(i, q.level);
        SphereRule r = mapped_rule(frame.basisH, sub);
        v.value = c * r.mean(f);
        v.samples = r.nodes.size();
        return v;
    }
    auto m = mc_subsphere_mean(frame.basisH, q.samples, q.seed, f);
    v.value = c * m.mean;
    v.se = c * m.se;
    v.samples = m.count;
    return v;
}

double section_identity_constant(int N, int d) {
    return std::pow(kPi, 0.5 * N - d) * sphere_area(d) / (N - d);
}

double section_function_multiplier(const StarBody& K, int d, const Vec& theta, int max_degree) {
    HarmonicSum h = rho_power_hsum(K, K.N - d, max_degree);
    HarmonicSum m = cosine_transform(h, 1.0 - d);
    return section_identity_constant(K.N, d) * m.eval(theta);
}

IdentityCheck section_identity_check(const StarBody& K, const VectorFieldSystem& sys, int n,
                                     const Vec& theta, const QuadOpts& q, int max_degree) {
    SectionFrame frame = section_frame(sys, n, theta);
    VolumeEstimate direct = section_volume(K, frame, q);
    IdentityCheck out;
    out.direct = direct.value;
    out.direct_se = direct.se;
    out.transform_side = section_function_multiplier(K, sys.d, theta, max_degree);
    out.residual = std::abs(out.direct - out.transform_side);
    return out;
}

double shifted_radial(const StarBody& K, const Vec& z, const Vec& v) {
    if (gauge(K, z) >= 1.0)
        throw std::domain_error("shifted_radial: z must be an interior point");
    Vec dir = normalized(v);
    auto g = [&](double lam) {
        Vec x(z);
        axpy(x, lam, dir);
        return gauge(K, x) - 1.0;
    };
    double hi = 2.0 * K.max_radial;
    double lo = 0.0;
    if (g(hi) <= 0.0) throw std::runtime_error("shifted_radial: bracketing failed");
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
        if (hi - lo < 1e-13 * hi) break;
    }
    double a = lo, b = hi, fa = g(a), fb = g(b);
    for (int it = 0; it < 3 && fb != fa; ++it) {
        double c = b - fb * (b - a) / (fb - fa);
        if (!(c > 0.0)) break;
        a = b;
        fa = fb;
        b = c;
        fb = g(b);
    }
    return b;
}

namespace {

// int_0^rho r^{i-1}(r^2+t^2)^{beta/2} dr; closed form at t = 0, panel GL else
double radial_weight_integral(double rho, int i, double beta, double t, int nodes) {
    if (t == 0.0) return std::pow(rho, i + beta) / (i + beta);
    auto f = [&](double r) { return std::pow(r, i - 1) * std::pow(r * r + t * t, 0.5 * beta); };
    double acc = 0.0;
    double split = std::min(std::abs(t), rho);
    {
        Rule1D r1 = gauss_legendre_on(nodes, 0.0, split);
        for (int k = 0; k < nodes; ++k) acc += r1.w[k] * f(r1.x[k]);
    }
    if (rho > split) {
        Rule1D r2 = gauss_legendre_on(nodes, split, rho);
        for (int k = 0; k < nodes; ++k) acc += r2.w[k] * f(r2.x[k]);
    }
    return acc;
}

SphereRule rule_for_dim(int dim, int level, uint64_t mc_samples, uint64_t seed) {
    if (dim == 1) {
        SphereRule r;
        r.N = 1;
        r.nodes = {Vec{1.0}, Vec{-1.0}};
        r.w = {0.5, 0.5};
        return r;
    }
    if (dim <= 4) return product_sphere_rule(dim, level);
    SphereRule r;
    r.N = dim;
    Rng rng(seed);
    r.nodes.reserve(mc_samples);
    for (uint64_t k = 0; k < mc_samples; ++k) r.nodes.push_back(rng.next_sphere(dim));
    r.w.assign(mc_samples, 1.0 / static_cast<double>(mc_samples));
    return r;
}

// Polar-route weighted section; offsets whose anchor t*u leaves the body
// contribute zero (exact for the ball; slices elsewhere are reached up to the
// radial bound of the anchor direction).
double weighted_section_impl(const StarBody& K, const Mat& xi_basis, double beta, double t,
                             const WeightedSectionOpts& opts) {
    const int N = K.N;
    const int i = xi_basis.cols();
    Mat perp = complete_orthonormal_basis(xi_basis);
    SphereRule outer = rule_for_dim(N - i, opts.outer_level, opts.mc_samples, opts.seed);
    SphereRule middle = rule_for_dim(i, opts.middle_level, opts.mc_samples, opts.seed + 1);
    double sigma_mid = sphere_area(i);

    double acc = 0.0;
    for (size_t a = 0; a < outer.nodes.size(); ++a) {
        Vec u = perp * outer.nodes[a];
        Vec z = scaled(u, t);
        if (std::abs(t) > 0.0 && gauge(K, z) >= 1.0 - 1e-12) continue;
        double lam = 0.0;
        for (size_t b = 0; b < middle.nodes.size(); ++b) {
            Vec v = xi_basis * middle.nodes[b];
            double rho_tv = (t == 0.0) ? K.rho(v) : shifted_radial(K, z, v);
            lam += middle.w[b] * radial_weight_integral(rho_tv, i, beta, t, opts.radial_nodes);
        }
        acc += outer.w[a] * sigma_mid * lam;
    }
    return acc;
}

}  // namespace

double weighted_section(const StarBody& K, const Mat& xi_basis, double beta, double t,
                        const WeightedSectionOpts& opts) {
    const int N = K.N;
    const int i = xi_basis.cols();
    if (i < 2 || i > N - 1) throw std::invalid_argument("weighted_section: 1 < i < N required");
    if (beta <= -i) throw std::domain_error("weighted_section: beta > -i required");
    double r_inscribed = K.min_radial * 0.99;
    if (std::abs(t) >= r_inscribed)
        throw std::domain_error("weighted_section: |t| must stay below the inscribed radius");
    return weighted_section_impl(K, xi_basis, beta, t, opts);
}

BrunnReport brunn_check(const StarBody& K, const Mat& xi_basis, double beta,
                        const std::vector<double>& t_grid, double tol,
                        const WeightedSectionOpts& opts) {
    BrunnReport rep;
    double a0 = weighted_section(K, xi_basis, beta, 0.0, opts);
    rep.worst_margin = 1e300;
    for (double t : t_grid) {
        double at = weighted_section(K, xi_basis, beta, t, opts);
        double margin = a0 - at;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_t = t;
        }
    }
    rep.violated = rep.worst_margin < -tol * std::max(1.0, std::abs(a0));
    return rep;
}

SlicingCheck slicing_identity_check(const StarBody& K, const VectorFieldSystem& sys, int n,
                              const Vec& theta, double alpha, double beta,
                              const WeightedSectionOpts& opts, int max_degree) {
    const int N = K.N;
    const int d = sys.d;
    const int i = N - d;
    const double ak = alpha + d - N;
    if (alpha >= N || near_nonpositive_integer(0.5 * (N - alpha)))
        throw std::domain_error(
            "slicing_identity_check: alpha < N with (N-alpha)/2 off the Gamma poles required");
    if (near_nonpositive_integer(0.5 * alpha))
        throw std::domain_error("slicing_identity_check: alpha must avoid {0, -2, -4, ...}");
    if (ak < -2.0 - 1e-12)
        throw std::domain_error("slicing_identity_check: alpha >= N-d-2 required");
    // continuation ranges of the subtracted integral: -1 < ak < 0 needs
    // beta > 1-i, and -2 < ak <= -1 (with the second derivative at -2) needs
    // beta >= 2-i
    if (ak < -1.0 + 1e-12 && beta < 2.0 - i - 1e-12)
        throw std::domain_error("slicing_identity_check: beta >= 2-i required for alpha <= N-d-1");
    if (ak < -1e-12 && beta <= 1.0 - i + 1e-12 && ak >= -1.0)
        throw std::domain_error("slicing_identity_check: beta > 1-i required for alpha < N-d");
    if (beta <= -i) throw std::domain_error("slicing_identity_check: beta > -i required");

    SectionFrame frame = section_frame(sys, n, theta);
    auto A = [&](double t) { return weighted_section_impl(K, frame.basisH, beta, t, opts); };

    SlicingCheck out;
    double tmax = K.max_radial * (1.0 + 1e-12);
    if (ak > 1e-12) {
        out.used = SlicingCase::PositiveAlpha;
        double integral =
            integrate_power_kernel(ak, [&](double s) { return A(s * tmax); }, 24, 12) *
            std::pow(tmax, ak);
        out.weighted_side = integral / std::tgamma(0.5 * ak);
    } else if (std::abs(ak) <= 1e-12) {
        out.used = SlicingCase::HalfValue;
        out.weighted_side = 0.5 * A(0.0);
    } else if (ak > -2.0 + 1e-12) {
        out.used = SlicingCase::PositiveAlpha;  // subtracted integral, Lemma-slicingk continuation
        double a0 = A(0.0);
        double head = 0.0;
        double hi = tmax;
        for (int p = 0; p < 14; ++p) {
            double lo = (p == 13) ? 0.0 : hi * 0.25;
            Rule1D r = gauss_legendre_on(24, lo, hi);
            for (int k = 0; k < 24; ++k)
                head += r.w[k] * std::pow(r.x[k], ak - 1.0) * (A(r.x[k]) - a0);
            hi = lo;
        }
        double far = a0 * std::pow(tmax, ak) / ak;  // A = 0 beyond tmax
        out.weighted_side = (head + far) / std::tgamma(0.5 * ak);
    } else {
        out.used = SlicingCase::SecondDerivative;
        double a0 = A(0.0);
        auto second = [&](double h) { return 2.0 * (A(h) - a0) / (h * h); };
        double d1 = second(0.02), d2 = second(0.01);
        double richardson = (4.0 * d2 - d1) / 3.0;
        out.weighted_side = -0.25 * richardson;
    }

    HarmonicSum h = rho_power_hsum(K, alpha + beta, max_degree);
    HarmonicSum m = cosine_transform(h, alpha + 1.0 - N);
    double c = std::pow(kPi, 0.5 * i) / ((ak + beta + i) * std::tgamma(0.5 * (N - i - ak)));
    out.transform_side = c * m.eval(theta);
    out.residual = std::abs(out.weighted_side - out.transform_side);
    return out;
}

}  // namespace bpgeo
