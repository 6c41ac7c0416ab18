#include "bpgeo/quadsphere.hpp"

#include <cmath>
#include <stdexcept>

#include "bpgeo/rng.hpp"
#include "bpgeo/specfun.hpp"

namespace bpgeo {

SphereRule product_sphere_rule(int N, int level) {
    if (N < 2) throw std::invalid_argument("product_sphere_rule: N >= 2");
    SphereRule r;
    r.N = N;
    if (N == 2) {
        int n = std::max(4, 2 * level);
        r.nodes.reserve(n);
        r.w.assign(n, 1.0 / n);
        for (int i = 0; i < n; ++i) {
            double a = 2.0 * kPi * (i + 0.5) / n;
            r.nodes.push_back({std::cos(a), std::sin(a)});
        }
        return r;
    }
    SphereRule sub = product_sphere_rule(N - 1, level);
    Rule1D lat = latitude_rule(N, level);
    r.nodes.reserve(lat.x.size() * sub.nodes.size());
    r.w.reserve(lat.x.size() * sub.nodes.size());
    for (size_t i = 0; i < lat.x.size(); ++i) {
        double t = lat.x[i];
        double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (size_t k = 0; k < sub.nodes.size(); ++k) {
            Vec x(N);
            x[0] = t;
            for (int j = 0; j < N - 1; ++j) x[j + 1] = s * sub.nodes[k][j];
            r.nodes.push_back(std::move(x));
            r.w.push_back(lat.w[i] * sub.w[k]);
        }
    }
    return r;
}

SphereRule mapped_rule(const Mat& basis, const SphereRule& sub) {
    if (basis.cols() != sub.N) throw std::invalid_argument("mapped_rule: basis/rule mismatch");
    SphereRule r;
    r.N = basis.rows();
    r.w = sub.w;
    r.nodes.reserve(sub.nodes.size());
    for (const Vec& o : sub.nodes) r.nodes.push_back(basis * o);
    return r;
}

kernels::MeanResult mc_sphere_mean(int N, uint64_t samples, uint64_t seed,
                                   const std::function<double(const Vec&)>& f, kernels::Mode mode) {
    double sum = 0.0, sumsq = 0.0;
    kernels::chunked_accumulate(samples, mode,
                                [&](uint64_t chunk, uint64_t lo, uint64_t hi, double& s, double& q) {
                                    Rng rng(seed, chunk);
                                    for (uint64_t i = lo; i < hi; ++i) {
                                        double v = f(rng.next_sphere(N));
                                        s += v;
                                        q += v * v;
                                    }
                                },
                                sum, sumsq);
    kernels::MeanResult r;
    r.count = samples;
    r.mean = sum / samples;
    if (samples > 1) {
        double var = (sumsq - sum * sum / samples) / (samples - 1.0);
        r.se = var > 0.0 ? std::sqrt(var / samples) : 0.0;
    }
    return r;
}

kernels::MeanResult mc_subsphere_mean(const Mat& basis, uint64_t samples, uint64_t seed,
                                      const std::function<double(const Vec&)>& f, kernels::Mode mode) {
    const int k = basis.cols();
    return mc_sphere_mean(k, samples, seed, [&](const Vec& o) { return f(basis * o); }, mode);
}

kernels::MeanResult SphereQuadrature::mean(const std::function<double(const Vec&)>& f) const {
    if (kind == Kind::Deterministic) {
        SphereRule r = product_sphere_rule(N, level);
        kernels::MeanResult m;
        m.mean = r.mean(f);
        m.se = 0.0;
        m.count = r.nodes.size();
        return m;
    }
    return mc_sphere_mean(N, samples, seed, f);
}

SphereQuadrature sphere_quadrature_deterministic(int N, int level) {
    if (N < 2) throw std::invalid_argument("sphere_quadrature: N >= 2 required");
    if (N > 4)
        throw std::invalid_argument(
            "sphere_quadrature: deterministic product rules are provided for N <= 4 only; "
            "use Monte Carlo for higher dimensions");
    SphereQuadrature q;
    q.N = N;
    q.kind = SphereQuadrature::Kind::Deterministic;
    q.level = level;
    return q;
}

SphereQuadrature sphere_quadrature_mc(int N, uint64_t samples, uint64_t seed) {
    if (N < 2) throw std::invalid_argument("sphere_quadrature: N >= 2 required");
    SphereQuadrature q;
    q.N = N;
    q.kind = SphereQuadrature::Kind::MonteCarlo;
    q.samples = samples;
    q.seed = seed;
    return q;
}

}  // namespace bpgeo
