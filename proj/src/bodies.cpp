#include "bpgeo/bodies.hpp"
#include <memory>

#include <cmath>

#include "bpgeo/quadsphere.hpp"
#include "bpgeo/rng.hpp"
#include "bpgeo/specfun.hpp"

namespace bpgeo {

namespace {

void finalize_radial_range(StarBody& K, int grid_points = 4096) {
    auto grid = low_discrepancy_sphere(K.N, grid_points);
    double lo = 1e300, hi = 0.0;
    for (const Vec& x : grid) {
        double r = K.rho(x);
        if (!(r > 0.0)) throw std::domain_error("star body: radial function must be positive");
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    K.min_radial = lo;
    K.max_radial = hi;
}

}  // namespace

StarBody make_ball(int N, double radius) {
    StarBody K;
    K.N = N;
    K.rho = [radius](const Vec&) { return radius; };
    K.power_hsum = HarmonicSum::constant(N, radius);
    K.power_exponent = 1.0;
    K.zonal = true;
    K.zonal_axis = Vec(N, 0.0);
    K.zonal_axis[0] = 1.0;
    K.zonal_profile = [radius](double) { return radius; };
    K.min_radial = K.max_radial = radius;
    return K;
}

StarBody ball_block_lp(int n, int d, double p, bool allow_star) {
    if (p < 1.0 && !allow_star)
        throw std::invalid_argument(
            "ball_block_lp: p < 1 gives a non-convex star body; pass allow_star to override");
    StarBody K;
    K.N = n * d;
    K.rho = [n, d, p](const Vec& x) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            double b = 0.0;
            for (int i = 0; i < d; ++i) b += x[j * d + i] * x[j * d + i];
            s += std::pow(b, 0.5 * p);
        }
        return std::pow(s, -1.0 / p);
    };
    K.symmetry = SymmetryTag{d, n, Chirality::Left};
    if (n == 2) {
        // revolution-like two-block structure: rho depends on u1 alone
        K.zonal = false;
    }
    finalize_radial_range(K);
    return K;
}

StarBody body_from_power_hsum(int N, double power, HarmonicSum h,
                              std::optional<SymmetryTag> symmetry) {
    if (h.N != N) throw std::invalid_argument("body_from_power_hsum: dimension mismatch");
    StarBody K;
    K.N = N;
    K.power_exponent = power;
    auto hs = std::make_shared<HarmonicSum>(h);
    K.rho = [hs, power](const Vec& x) {
        double v = hs->eval(x);
        if (!(v > 0.0)) throw std::domain_error("star body: rho^p must stay positive");
        return std::pow(v, 1.0 / power);
    };
    K.power_hsum = std::move(h);
    K.symmetry = symmetry;
    finalize_radial_range(K);
    return K;
}

StarBody body_zonal(int N, const Vec& axis, std::function<double(double)> profile,
                    std::optional<SymmetryTag> symmetry) {
    StarBody K;
    K.N = N;
    Vec a = normalized(axis);
    auto prof = std::make_shared<std::function<double(double)>>(std::move(profile));
    K.rho = [a, prof](const Vec& x) { return (*prof)(dot(x, a)); };
    K.zonal = true;
    K.zonal_axis = a;
    K.zonal_profile = [prof](double t) { return (*prof)(t); };
    K.symmetry = symmetry;
    finalize_radial_range(K);
    return K;
}

StarBody perturbed_body(const StarBody& L, double eps, const SphericalFunction& phi, int d) {
    const int N = L.N;
    const double p = N - d;
    auto rhoL = L.rho;
    auto phifn = [phi](const Vec& x) { return phi(x); };
    auto kpow = [rhoL, phifn, eps, p](const Vec& x) {
        return std::pow(rhoL(x), p) - eps * phifn(x);
    };
    // positivity on the fixed validation grid
    auto grid = low_discrepancy_sphere(N, 4096);
    for (const Vec& x : grid)
        if (!(kpow(x) > 0.0))
            throw std::domain_error("perturbed_body: rho_L^{N-d} - eps*phi must stay positive");
    Rng rng(271828);
    for (int i = 0; i < 100000; ++i) {
        Vec x = rng.next_sphere(N);
        if (!(kpow(x) > 0.0))
            throw std::domain_error("perturbed_body: rho_L^{N-d} - eps*phi must stay positive");
    }

    StarBody K;
    K.N = N;
    K.power_exponent = p;
    K.rho = [kpow, p](const Vec& x) { return std::pow(kpow(x), 1.0 / p); };
    if (L.power_hsum && L.power_exponent == p && phi.has_hsum()) {
        HarmonicSum h = *L.power_hsum;
        h += phi.hsum().scaled(-eps);
        K.power_hsum = std::move(h);
    }
    if (L.symmetry) {
        VectorFieldSystem sys = vector_field_system(L.symmetry->d, L.symmetry->chirality);
        if (g_invariance_defect(phifn, N, sys, L.symmetry->n, 16, 4242) < 1e-10)
            K.symmetry = L.symmetry;
    }
    finalize_radial_range(K);
    return K;
}

double gauge(const StarBody& K, const Vec& x) {
    double r = norm(x);
    if (r == 0.0) return 0.0;
    return r / K.rho(scaled(x, 1.0 / r));
}

VolumeEstimate volume(const StarBody& K, const QuadOpts& q) {
    const int N = K.N;
    double c = sphere_area(N) / N;
    auto f = [&](const Vec& x) { return std::pow(K.rho(x), N); };
    VolumeEstimate v;
    if (q.deterministic && N <= 4) {
        SphereRule r = product_sphere_rule(N, q.level);
        v.value = c * r.mean(f);
        v.se = 0.0;
        v.samples = r.nodes.size();
        return v;
    }
    auto m = mc_sphere_mean(N, q.samples, q.seed, f);
    v.value = c * m.mean;
    v.se = c * m.se;
    v.samples = m.count;
    return v;
}

VolumeEstimate volume_difference(const StarBody& K, const StarBody& L, uint64_t samples,
                                 uint64_t seed) {
    if (K.N != L.N) throw std::invalid_argument("volume_difference: dimension mismatch");
    const int N = K.N;
    double c = sphere_area(N) / N;
    auto m = mc_sphere_mean(N, samples, seed, [&](const Vec& x) {
        return std::pow(K.rho(x), N) - std::pow(L.rho(x), N);
    });
    return {c * m.mean, c * m.se, m.count};
}

SphericalFunction symmetrize(const SphericalFunction& f, const VectorFieldSystem& sys, int n,
                             int level, uint64_t mc_samples, uint64_t seed) {
    const int d = sys.d;
    const int N = d * n;
    if (f.N() != N) throw std::invalid_argument("symmetrize: dimension mismatch");
    // lambda-quadrature over S^{d-1}
    std::vector<Vec> lams;
    std::vector<double> w;
    if (d == 1) {
        lams = {Vec{1.0}, Vec{-1.0}};
        w = {0.5, 0.5};
    } else if (d <= 4) {
        SphereRule r = product_sphere_rule(d, level);
        lams = r.nodes;
        w = r.w;
    } else {
        Rng rng(seed);
        lams.reserve(mc_samples);
        for (uint64_t i = 0; i < mc_samples; ++i) lams.push_back(rng.next_sphere(d));
        w.assign(mc_samples, 1.0 / static_cast<double>(mc_samples));
    }
    std::vector<Mat> gs;
    gs.reserve(lams.size());
    for (const Vec& lam : lams) gs.push_back(group_element(sys, n, lam).matrix);
    auto gshared = std::make_shared<std::vector<Mat>>(std::move(gs));
    auto wshared = std::make_shared<std::vector<double>>(std::move(w));
    auto avg = [f, gshared, wshared](const Vec& x) {
        double s = 0.0;
        for (size_t i = 0; i < gshared->size(); ++i) s += (*wshared)[i] * f((*gshared)[i] * x);
        return s;
    };
    return SphericalFunction::evaluator(N, avg, f.parity());
}

std::optional<ConvexityWitness> convexity_check(const StarBody& K, uint64_t trials, uint64_t seed,
                                                double tol) {
    Rng rng(seed);
    for (uint64_t i = 0; i < trials; ++i) {
        Vec u = rng.next_sphere(K.N), v = rng.next_sphere(K.N);
        Vec x = scaled(u, K.rho(u)), y = scaled(v, K.rho(v));
        Vec m(K.N);
        for (int c = 0; c < K.N; ++c) m[c] = 0.5 * (x[c] + y[c]);
        double g = gauge(K, m);
        if (g > 1.0 + tol) return ConvexityWitness{x, y, g};
    }
    return std::nullopt;
}

double g_invariance_defect(const std::function<double(const Vec&)>& f, int N,
                           const VectorFieldSystem& sys, int n, int orbit_count, uint64_t seed) {
    Rng rng(seed);
    const int d = sys.d;
    double worst = 0.0;
    for (int o = 0; o < orbit_count; ++o) {
        Vec theta = rng.next_sphere(N);
        double base = f(theta);
        for (int k = 0; k < 8; ++k) {
            Vec lam = rng.next_sphere(d);
            Vec moved = group_element(sys, n, lam).matrix * theta;
            worst = std::max(worst, std::abs(f(moved) - base));
        }
    }
    return worst;
}

BodyReport body_report(const StarBody& K, const QuadOpts& q, uint64_t convexity_trials,
                       uint64_t seed) {
    BodyReport r;
    r.volume = volume(K, q);
    r.min_radial = K.min_radial;
    r.max_radial = K.max_radial;
    if (convexity_trials > 0) r.convexity_witness = convexity_check(K, convexity_trials, seed);
    return r;
}

HarmonicSum rho_power_hsum(const StarBody& K, double p, int max_degree) {
    if (K.power_hsum && std::abs(K.power_exponent - p) < 1e-12) return *K.power_hsum;
    if (K.power_hsum && K.power_exponent > 0) {
        double ratio = p / K.power_exponent;
        double rint = std::round(ratio);
        if (ratio > 1.0 - 1e-12 && std::abs(ratio - rint) < 1e-12) {
            // integer power of the stored sum, re-expanded exactly; degree-0
            // terms are plain constants and fit either carrier
            bool higher_block = false, higher_zonal = false, higher_other = false;
            const Vec* axis = nullptr;
            bool one_axis = true;
            for (const auto& t : K.power_hsum->terms) {
                if (t.degree == 0) continue;
                if (t.kind == HTerm::Kind::Block) higher_block = true;
                else if (t.kind == HTerm::Kind::Zonal) {
                    higher_zonal = true;
                    if (!axis) axis = &t.axis;
                    else if (std::abs(dot(*axis, t.axis) - 1.0) > 1e-12) one_axis = false;
                } else
                    higher_other = true;
            }
            int k = static_cast<int>(rint);
            if (!higher_block && !higher_zonal && !higher_other) {
                Vec probe(K.N, 0.0);
                probe[0] = 1.0;
                return HarmonicSum::constant(K.N, std::pow(K.power_hsum->eval(probe), k));
            }
            if (higher_block && !higher_zonal && !higher_other) {
                HarmonicSum acc = *K.power_hsum;
                for (int i = 1; i < k; ++i) acc = block_product(acc, *K.power_hsum, max_degree);
                return acc;
            }
            if (higher_zonal && !higher_block && !higher_other && one_axis) {
                // fold constants onto the shared axis so the product stays zonal
                HarmonicSum base;
                base.N = K.N;
                for (auto t : K.power_hsum->terms) {
                    if (t.degree == 0 && axis) t.axis = *axis;
                    base.terms.push_back(std::move(t));
                }
                HarmonicSum acc = base;
                for (int i = 1; i < k; ++i) acc = zonal_product(acc, base, max_degree);
                return acc;
            }
        }
    }
    if (K.zonal) {
        auto prof = K.zonal_profile;
        return zonal_expand(K.N, K.zonal_axis, [prof, p](double t) { return std::pow(prof(t), p); },
                            max_degree, true);
    }
    if (K.N <= 4) {
        auto rho = K.rho;
        return xgrid_project(K.N, [rho, p](const Vec& x) { return std::pow(rho(x), p); },
                             max_degree);
    }
    throw std::invalid_argument(
        "rho_power_hsum: no harmonic route for this body (store rho^p by construction, use a "
        "zonal profile, or reduce to N <= 4)");
}

}  // namespace bpgeo
