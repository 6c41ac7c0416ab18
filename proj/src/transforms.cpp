#include "bpgeo/transforms.hpp"
#include <memory>

#include <cmath>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>

#include "bpgeo/quadsphere.hpp"
#include "bpgeo/specfun.hpp"

namespace bpgeo {

bool cosine_alpha_excluded(double alpha, double margin) {
    if (alpha < 1.0 - margin) return false;
    double r = std::round(alpha);
    return std::abs(alpha - r) < margin && static_cast<long long>(r) % 2 == 1 && r >= 1.0;
}

void require_cosine_alpha(double alpha) {
    if (cosine_alpha_excluded(alpha))
        throw std::domain_error("cosine transform: alpha is excluded (alpha != 1,3,5,...)");
}

double cosine_gamma(int N, double alpha) {
    if (alpha <= 0) throw std::domain_error("cosine_gamma: Re alpha > 0 required");
    require_cosine_alpha(alpha);
    return sphere_area(N) * std::tgamma(0.5 * (1.0 - alpha)) /
           (2.0 * std::pow(kPi, 0.5 * (N - 1)) * std::tgamma(0.5 * alpha));
}

double radon_gamma(int N, int i, double alpha) {
    if (alpha <= 0) throw std::domain_error("radon_gamma: Re alpha > 0 required");
    double arg = 0.5 * (N - alpha - i);
    if (near_nonpositive_integer(arg))
        throw std::domain_error("generalized radon: alpha + i - N must avoid {0, 2, 4, ...}");
    return sphere_area(N) * std::tgamma(arg) /
           (2.0 * std::pow(kPi, 0.5 * (N - 1)) * std::tgamma(0.5 * alpha));
}

namespace {

double multiplier_closed_form(int N, double alpha, int j) {
    // (-1)^{j/2} Gamma((j+1-alpha)/2) / Gamma((j+N-1+alpha)/2)
    double sign = (j / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * gamma_ratio(0.5 * (j + 1 - alpha), 0.5 * (j + N - 1 + alpha));
}

// int_0^1 t^{alpha-1} (1-t^2)^{edge} g(t) dt where 2*edge+1 is a nonnegative
// integer (latitude and projection weights). The substitution t = cos(psi)
// turns the edge weight into sin^{2 edge + 1}(psi), smooth at psi = 0; the
// remaining cos^{alpha-1} kernel near psi = pi/2 goes through the power
// substitution.
double integrate_power_edge(double alpha, double edge, const std::function<double(double)>& g,
                            int nodes = 32, int panels = 12) {
    const double a = 1.0;  // split angle
    double part1 = 0.0;
    {
        Rule1D r = gauss_legendre_on(4 * nodes, 0.0, a);
        for (size_t i = 0; i < r.x.size(); ++i) {
            double psi = r.x[i];
            part1 += r.w[i] * std::pow(std::cos(psi), alpha - 1.0) *
                     std::pow(std::sin(psi), 2.0 * edge + 1.0) * g(std::cos(psi));
        }
    }
    const double b = 0.5 * kPi - a;
    auto tail = [&](double s) {
        // s = pi/2 - psi; sin(s)^{alpha-1} = s^{alpha-1} (sin s / s)^{alpha-1}
        double sins = std::sin(s);
        double ratio = (s > 1e-30) ? sins / s : 1.0;
        return std::pow(ratio, alpha - 1.0) * std::pow(std::cos(s), 2.0 * edge + 1.0) * g(sins);
    };
    double part2 =
        integrate_power_kernel(alpha, [&](double y) { return tail(b * y); }, nodes, panels) *
        std::pow(b, alpha);
    return part1 + part2;
}

// direct quadrature of the multiplier for 0 < alpha < 1:
// gamma_N(alpha) (sigma_{N-2}/sigma_{N-1}) int_{-1}^1 |t|^{alpha-1} G_j(t) (1-t^2)^{(N-3)/2} dt
double multiplier_by_quadrature(int N, double alpha, int j) {
    auto g = [&](double t) { return gegenbauer(N, j, t); };
    double integral = 2.0 * integrate_power_edge(alpha, 0.5 * (N - 3), g, 32, 16);
    return cosine_gamma(N, alpha) * sphere_area(N - 1) / sphere_area(N) * integral;
}

void validate_multiplier_once(int N) {
    static std::set<int> validated;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (validated.count(N)) return;
    for (double alpha : {0.25, 0.5, 0.75})
        for (int j : {0, 2, 4}) {
            double closed = multiplier_closed_form(N, alpha, j);
            double quad = multiplier_by_quadrature(N, alpha, j);
            if (std::abs(closed - quad) > 1e-10 * std::max(1.0, std::abs(closed)))
                throw std::logic_error("funk_hecke_multiplier: closed form failed quadrature validation");
        }
    validated.insert(N);
}

}  // namespace

double funk_hecke_multiplier(int N, double alpha, int j) {
    require_cosine_alpha(alpha);
    if (j % 2 == 1) return 0.0;
    validate_multiplier_once(N);
    return multiplier_closed_form(N, alpha, j);
}

double funk_multiplier(int N, int j) {
    // M = M^0 / c_{N-1}
    if (j % 2 == 1) return 0.0;
    return multiplier_closed_form(N, 0.0, j) / radon_limit_constant(N - 1);
}

HarmonicSum cosine_transform(const HarmonicSum& f, double alpha) {
    if (!f.even_only())
        throw std::invalid_argument("cosine_transform: even harmonic sums only");
    require_cosine_alpha(alpha);
    int N = f.N;
    return f.apply_multiplier([N, alpha](int j) { return funk_hecke_multiplier(N, alpha, j); });
}

namespace {

SphereRule subsphere_rule_or_empty(int dim_sub, int level) {
    // explicit rule in R^{dim_sub}; empty if too high-dimensional for products
    if (dim_sub <= 4) {
        if (dim_sub == 1) {
            SphereRule r;
            r.N = 1;
            r.nodes = {Vec{1.0}, Vec{-1.0}};
            r.w = {0.5, 0.5};
            return r;
        }
        return product_sphere_rule(dim_sub, level);
    }
    return SphereRule{};
}

double subsphere_mean(const SphericalFunction& f, const Mat& basis, int level,
                      uint64_t mc_samples, uint64_t seed) {
    int k = basis.cols();
    SphereRule sub = subsphere_rule_or_empty(k, level);
    if (!sub.nodes.empty()) {
        SphereRule r = mapped_rule(basis, sub);
        double s = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i) s += r.w[i] * f(r.nodes[i]);
        return s;
    }
    return mc_subsphere_mean(basis, mc_samples, seed, [&](const Vec& x) { return f(x); }).mean;
}

}  // namespace

double funk_transform(const SphericalFunction& f, const Vec& u, int level, uint64_t mc_samples,
                      uint64_t seed) {
    const int N = static_cast<int>(u.size());
    Mat ucol(N, 1);
    ucol.set_col(0, normalized(u));
    Mat B = complete_orthonormal_basis(ucol);
    return subsphere_mean(f, B, level, mc_samples, seed);
}

double cosine_transform_direct(const SphericalFunction& f, double alpha, const Vec& u, int level,
                               uint64_t mc_samples, uint64_t seed) {
    const int N = static_cast<int>(u.size());
    if (N < 3)
        throw std::invalid_argument("cosine_transform_direct: N >= 3 required (use multipliers for N = 2)");
    if (alpha <= 0) throw std::domain_error("cosine_transform_direct: Re alpha > 0 required");
    require_cosine_alpha(alpha);
    Vec un = normalized(u);

    std::function<double(double)> parallel_mean;
    if (f.form() == SphericalFunction::Form::Zonal &&
        std::abs(std::abs(dot(f.axis(), un)) - 1.0) < 1e-12) {
        double s = dot(f.axis(), un) > 0 ? 1.0 : -1.0;
        parallel_mean = [&f, s](double t) { return f.profile(s * t); };
    } else {
        Mat ucol(N, 1);
        ucol.set_col(0, un);
        Mat B = complete_orthonormal_basis(ucol);
        SphereRule sub = subsphere_rule_or_empty(N - 1, level);
        auto rule = std::make_shared<SphereRule>(std::move(sub));
        bool use_mc = rule->nodes.empty();
        parallel_mean = [&f, un, B, rule, use_mc, mc_samples, seed, N](double t) {
            double s = std::sqrt(std::max(0.0, 1.0 - t * t));
            auto point = [&](const Vec& o) {
                Vec x = B * o;
                for (int i = 0; i < N; ++i) x[i] = t * un[i] + s * x[i];
                return x;
            };
            if (!use_mc) {
                double acc = 0.0;
                for (size_t i = 0; i < rule->nodes.size(); ++i)
                    acc += rule->w[i] * f(point(rule->nodes[i]));
                return acc;
            }
            return mc_sphere_mean(N - 1, mc_samples, seed,
                                  [&](const Vec& o) { return f(point(o)); })
                .mean;
        };
    }

    auto g = [&](double t) { return parallel_mean(t) + parallel_mean(-t); };
    double integral = integrate_power_edge(alpha, 0.5 * (N - 3), g);
    return cosine_gamma(N, alpha) * sphere_area(N - 1) / sphere_area(N) * integral;
}

double radon_transform(const SphericalFunction& f, const Mat& xi_basis, int level,
                       uint64_t mc_samples, uint64_t seed) {
    return subsphere_mean(f, xi_basis, level, mc_samples, seed);
}

double generalized_radon(const SphericalFunction& f, const Mat& xi_basis, double alpha, int level,
                         uint64_t mc_samples, uint64_t seed) {
    const int N = xi_basis.rows();
    const int i = xi_basis.cols();
    // i = 1 arises on the complement side of the slice-transform identity
    if (i < 1 || i > N - 1) throw std::invalid_argument("generalized_radon: 1 <= i <= N-1");
    double gam = radon_gamma(N, i, alpha);  // also enforces the exclusion set
    Mat perp = complete_orthonormal_basis(xi_basis);
    SphereRule ru = subsphere_rule_or_empty(N - i, level);
    SphereRule rv = subsphere_rule_or_empty(i, level);
    if (ru.nodes.empty() || rv.nodes.empty())
        throw std::invalid_argument("generalized_radon: deterministic subsphere rules need dims <= 4");
    (void)mc_samples;
    (void)seed;

    auto g = [&](double w) {
        double s = std::sqrt(std::max(0.0, 1.0 - w * w));
        double acc = 0.0;
        for (size_t a = 0; a < ru.nodes.size(); ++a) {
            Vec xu = perp * ru.nodes[a];
            for (size_t b = 0; b < rv.nodes.size(); ++b) {
                Vec xv = xi_basis * rv.nodes[b];
                Vec x(N);
                for (int c = 0; c < N; ++c) x[c] = w * xu[c] + s * xv[c];
                acc += ru.w[a] * rv.w[b] * f(x);
            }
        }
        return acc;
    };
    double cb = 2.0 / std::exp(std::lgamma(0.5 * (N - i)) + std::lgamma(0.5 * i) - std::lgamma(0.5 * N));
    // mean over the sphere of |Pr_{xi-perp} theta|^{alpha+i-N} f(theta):
    // cb int_0^1 w^{alpha-1} (1-w^2)^{i/2-1} g(w) dw
    double integral = integrate_power_edge(alpha, 0.5 * i - 1.0, g);
    return gam * cb * integral;
}

std::function<double(const Vec&)> homogeneous_extend(const SphericalFunction& f, double lambda) {
    return [f, lambda](const Vec& x) {
        double r = norm(x);
        if (r == 0.0) throw std::domain_error("homogeneous extension: x != 0 required");
        return std::pow(r, lambda) * f(scaled(x, 1.0 / r));
    };
}

void require_dm_admissible(int N, int d, int m) {
    if (m < 0) throw std::domain_error("riesz_dm: m >= 0 required");
    int two_m = 2 * m;
    if (two_m >= N - d && (two_m - (N - d)) % 2 == 0)
        throw std::domain_error("riesz_dm: 2m must avoid {N-d, N-d+2, N-d+4, ...}");
}

double dm_multiplier(int N, int d, int m, int j) {
    double v = std::pow(2.0, -2 * m);
    for (int s = 0; s < m; ++s) v *= (j + d + 2.0 * s) * (j + N - 2.0 - d - 2.0 * s);
    return v;
}

HarmonicSum riesz_dm_transform(const HarmonicSum& f, int d, int m) {
    require_dm_admissible(f.N, d, m);
    int N = f.N;
    return f.apply_multiplier([N, d, m](int j) { return dm_multiplier(N, d, m, j); });
}

double riesz_dm_point(const SphericalFunction& f, int d, int m, const Vec& theta) {
    require_dm_admissible(f.N(), d, m);
    if (f.has_hsum()) return riesz_dm_transform(f.hsum(), d, m).eval(theta);
    return riesz_dm_fd(f, d, m, theta);
}

namespace {

double iterated_laplacian(const std::function<double(const Vec&)>& g, int N, int m, const Vec& x,
                          double h) {
    if (m == 0) return g(x);
    double acc = 0.0;
    double center = iterated_laplacian(g, N, m - 1, x, h);
    for (int i = 0; i < N; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        acc += iterated_laplacian(g, N, m - 1, xp, h) - 2.0 * center +
               iterated_laplacian(g, N, m - 1, xm, h);
    }
    return acc / (h * h);
}

}  // namespace

double riesz_dm_fd(const SphericalFunction& f, int d, int m, const Vec& theta) {
    require_dm_admissible(f.N(), d, m);
    const int N = f.N();
    auto ext = homogeneous_extend(f, -static_cast<double>(d));
    if (m == 0) return ext(theta);
    double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (-Delta)^m
    auto eval = [&](double h) { return sign * iterated_laplacian(ext, N, m, theta, h); };
    double a1 = eval(1e-2), a2 = eval(5e-3);
    double richardson = (4.0 * a2 - a1) / 3.0;
    return std::pow(2.0, -2 * m) * richardson;
}

MultiplierTable MultiplierTable::build(int N, double alpha, int max_degree) {
    MultiplierTable t;
    t.N = N;
    t.alpha = alpha;
    t.max_degree = max_degree;
    for (int j = 0; j <= max_degree; j += 2) t.values.push_back(funk_hecke_multiplier(N, alpha, j));
    return t;
}

void MultiplierTable::dump(std::ostream& os) const {
    os.precision(17);
    for (size_t k = 0; k < values.size(); ++k)
        os << N << " " << alpha << " " << 2 * k << " " << values[k] << "\n";
}

MultiplierTable MultiplierTable::load(std::istream& is) {
    MultiplierTable t;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        int N, j;
        double alpha, v;
        if (!(ss >> N >> alpha >> j >> v)) throw std::runtime_error("MultiplierTable: parse error");
        t.N = N;
        t.alpha = alpha;
        t.max_degree = j;
        t.values.push_back(v);
    }
    return t;
}

}  // namespace bpgeo
