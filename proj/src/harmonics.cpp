#include "bpgeo/harmonics.hpp"

#include <cmath>

#include "bpgeo/quadsphere.hpp"
#include "bpgeo/rng.hpp"

namespace bpgeo {

double HTerm::eval(const Vec& theta, int N) const {
    switch (kind) {
        case Kind::Zonal:
            return coeff * gegenbauer(N, degree, dot(theta, axis));
        case Kind::Block: {
            Vec u = bs.radii2(theta);
            return p.eval(u.data());
        }
        case Kind::X:
            return p.eval(theta.data());
    }
    return 0.0;
}

HTerm HTerm::scaled(double c) const {
    HTerm t = *this;
    if (kind == Kind::Zonal)
        t.coeff *= c;
    else
        t.p *= c;
    return t;
}

double HarmonicSum::eval(const Vec& theta) const {
    double s = 0.0;
    for (const auto& t : terms) s += t.eval(theta, N);
    return s;
}

int HarmonicSum::max_degree() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.degree);
    return d;
}

bool HarmonicSum::even_only() const {
    for (const auto& t : terms)
        if (t.degree % 2 != 0) return false;
    return true;
}

HarmonicSum& HarmonicSum::operator+=(const HarmonicSum& o) {
    if (N == 0) N = o.N;
    if (N != o.N) throw std::invalid_argument("HarmonicSum +=: dimension mismatch");
    for (const auto& t : o.terms) terms.push_back(t);
    return *this;
}

HarmonicSum HarmonicSum::scaled(double c) const {
    HarmonicSum h;
    h.N = N;
    h.terms.reserve(terms.size());
    for (const auto& t : terms) h.terms.push_back(t.scaled(c));
    return h;
}

HarmonicSum HarmonicSum::apply_multiplier(const std::function<double(int)>& m) const {
    HarmonicSum h;
    h.N = N;
    h.terms.reserve(terms.size());
    for (const auto& t : terms) h.terms.push_back(t.scaled(m(t.degree)));
    return h;
}

HarmonicSum HarmonicSum::constant(int N, double c) {
    HarmonicSum h;
    h.N = N;
    HTerm t;
    t.kind = HTerm::Kind::Zonal;
    t.degree = 0;
    t.coeff = c;
    t.axis = Vec(N, 0.0);
    t.axis[0] = 1.0;
    h.terms.push_back(t);
    return h;
}

HarmonicSum zonal_expand(int N, const Vec& axis, const std::function<double(double)>& profile,
                         int max_degree, bool even_only, int quad_nodes) {
    Rule1D r = latitude_rule(N, quad_nodes);
    std::vector<double> fv(r.x.size());
    for (size_t i = 0; i < r.x.size(); ++i) fv[i] = profile(r.x[i]);
    HarmonicSum h;
    h.N = N;
    for (int j = 0; j <= max_degree; ++j) {
        if (even_only && j % 2 == 1) continue;
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < r.x.size(); ++i) {
            double g = gegenbauer(N, j, r.x[i]);
            num += r.w[i] * fv[i] * g;
            den += r.w[i] * g * g;
        }
        double a = num / den;
        if (std::abs(a) < 1e-15) continue;
        HTerm t;
        t.kind = HTerm::Kind::Zonal;
        t.degree = j;
        t.coeff = a;
        t.axis = axis;
        h.terms.push_back(t);
    }
    return h;
}

HarmonicSum block_expand(const BlockStructure& bs, const MPoly& f, int max_degree) {
    int need = 2 * f.degree();
    const BlockHarmonicBasis& basis = BlockHarmonicBasis::get(bs, std::max(need, max_degree));
    std::vector<double> c = basis.project(f);
    HarmonicSum h;
    h.N = bs.N();
    double scale = std::max(1.0, f.max_abs_coeff());
    for (int i = 0; i < basis.size(); ++i) {
        if (basis.degree(i) > max_degree) continue;
        if (std::abs(c[i]) < 1e-13 * scale) continue;
        HTerm t;
        t.kind = HTerm::Kind::Block;
        t.degree = basis.degree(i);
        t.bs = bs;
        t.p = basis.element(i);
        t.p *= c[i];
        h.terms.push_back(t);
    }
    return h;
}

HarmonicSum block2_expand(const BlockStructure& bs, const std::function<double(double)>& g,
                          int max_degree, int quad_nodes) {
    if (bs.nblocks() != 2) throw std::invalid_argument("block2_expand: two blocks required");
    double a1 = 0.5 * bs.dims[0], a2 = 0.5 * bs.dims[1];
    // u1 = (1+x)/2, weight (1-x)^{a2-1} (1+x)^{a1-1}
    Rule1D r = gauss_jacobi(quad_nodes, a2 - 1.0, a1 - 1.0);
    double wsum = 0.0;
    for (double w : r.w) wsum += w;
    const BlockHarmonicBasis& basis = BlockHarmonicBasis::get(bs, max_degree);
    HarmonicSum h;
    h.N = bs.N();
    for (int i = 0; i < basis.size(); ++i) {
        if (basis.degree(i) > max_degree) continue;
        double c = 0.0;
        for (size_t k = 0; k < r.x.size(); ++k) {
            double u[2] = {0.5 * (1.0 + r.x[k]), 0.5 * (1.0 - r.x[k])};
            c += r.w[k] * g(u[0]) * basis.element(i).eval(u);
        }
        c /= wsum;
        if (std::abs(c) < 1e-15) continue;
        HTerm t;
        t.kind = HTerm::Kind::Block;
        t.degree = basis.degree(i);
        t.bs = bs;
        t.p = basis.element(i);
        t.p *= c;
        h.terms.push_back(t);
    }
    return h;
}

HarmonicSum xgrid_project(int N, const std::function<double(const Vec&)>& f, int max_degree,
                          int level) {
    if (N > 4)
        throw std::invalid_argument(
            "xgrid_project: dense-grid harmonic projection is supported for N <= 4; supply "
            "harmonic sums by construction in higher dimensions");
    // the dense-grid route is specified up to degree 12 (the explicit basis
    // loses accuracy beyond ~16 in double precision)
    max_degree = std::min(max_degree, 12);
    const XHarmonicBasis& basis = XHarmonicBasis::get(N, max_degree);
    SphereRule rule = product_sphere_rule(N, level);
    std::vector<double> fv(rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i) fv[i] = f(rule.nodes[i]);
    HarmonicSum h;
    h.N = N;
    for (int b = 0; b < basis.size(); ++b) {
        double c = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            c += rule.w[i] * fv[i] * basis.element(b).eval(rule.nodes[i].data());
        if (std::abs(c) < 1e-14) continue;
        HTerm t;
        t.kind = HTerm::Kind::X;
        t.degree = basis.degree(b);
        t.p = basis.element(b);
        t.p *= c;
        h.terms.push_back(t);
    }
    return h;
}

double projection_residual(const HarmonicSum& h, const std::function<double(const Vec&)>& f,
                           int grid_points) {
    auto grid = low_discrepancy_sphere(h.N, grid_points);
    double worst = 0.0;
    for (const Vec& x : grid) worst = std::max(worst, std::abs(f(x) - h.eval(x)));
    return worst;
}

namespace {

// collects a sum of block terms into one polynomial; degree-0 terms of any
// carrier are accepted as constants
MPoly block_terms_total(const HarmonicSum& a, const BlockStructure& bs) {
    MPoly total = MPoly::constant(bs.nblocks(), 0.0);
    for (const auto& t : a.terms) {
        if (t.kind == HTerm::Kind::Block && t.bs == bs) {
            total += t.p;
        } else if (t.degree == 0) {
            Vec probe(bs.N(), 0.0);
            probe[0] = 1.0;
            total += MPoly::constant(bs.nblocks(), t.eval(probe, bs.N()));
        } else {
            throw std::invalid_argument("block_product: all terms must share the block structure");
        }
    }
    return total;
}

const BlockStructure* block_structure_of(const HarmonicSum& a) {
    for (const auto& t : a.terms)
        if (t.kind == HTerm::Kind::Block) return &t.bs;
    return nullptr;
}

}  // namespace

HarmonicSum block_product(const HarmonicSum& a, const HarmonicSum& b, int max_degree) {
    if (a.terms.empty() || b.terms.empty()) return HarmonicSum{a.N, {}};
    const BlockStructure* bs = block_structure_of(a);
    if (!bs) bs = block_structure_of(b);
    if (!bs) throw std::invalid_argument("block_product: no block terms present");
    MPoly pa = block_terms_total(a, *bs);
    MPoly pb = block_terms_total(b, *bs);
    return block_expand(*bs, pa * pb, max_degree);
}

HarmonicSum zonal_product(const HarmonicSum& a, const HarmonicSum& b, int max_degree) {
    if (a.terms.empty() || b.terms.empty()) return HarmonicSum{a.N, {}};
    const Vec& axis = a.terms.front().axis;
    for (const auto& t : b.terms)
        if (t.kind != HTerm::Kind::Zonal ||
            (t.degree > 0 && std::abs(dot(t.axis, axis) - 1.0) > 1e-12))
            throw std::invalid_argument("zonal_product: terms must share one axis");
    int N = a.N;
    bool even = a.even_only() && b.even_only();
    auto prof = [&](double t) {
        double va = 0.0, vb = 0.0;
        for (const auto& term : a.terms) va += term.coeff * gegenbauer(N, term.degree, t);
        for (const auto& term : b.terms) vb += term.coeff * gegenbauer(N, term.degree, t);
        return va * vb;
    };
    return zonal_expand(N, axis, prof, max_degree, even,
                        std::max(64, a.max_degree() + b.max_degree() + 8));
}

SphericalFunction SphericalFunction::evaluator(int N, std::function<double(const Vec&)> fn,
                                               Parity parity) {
    SphericalFunction f;
    f.N_ = N;
    f.form_ = Form::Evaluator;
    f.parity_ = parity;
    f.fn_ = std::move(fn);
    return f;
}

SphericalFunction SphericalFunction::zonal(int N, Vec axis, std::function<double(double)> profile,
                                           Parity parity) {
    SphericalFunction f;
    f.N_ = N;
    f.form_ = Form::Zonal;
    f.parity_ = parity;
    f.axis_ = normalized(axis);
    f.profile_ = std::move(profile);
    return f;
}

SphericalFunction SphericalFunction::harmonic(HarmonicSum h) {
    SphericalFunction f;
    f.N_ = h.N;
    f.form_ = Form::Harmonic;
    f.parity_ = h.even_only() ? Parity::Even : Parity::Mixed;
    f.hsum_ = std::move(h);
    return f;
}

double SphericalFunction::operator()(const Vec& theta) const {
    switch (form_) {
        case Form::Evaluator:
            return fn_(theta);
        case Form::Zonal:
            return profile_(dot(theta, axis_));
        case Form::Harmonic:
            return hsum_.eval(theta);
    }
    return 0.0;
}

HarmonicSum SphericalFunction::to_harmonic(int max_degree) const {
    switch (form_) {
        case Form::Harmonic:
            return hsum_;
        case Form::Zonal:
            return zonal_expand(N_, axis_, profile_, max_degree, parity_ == Parity::Even);
        case Form::Evaluator:
            return xgrid_project(N_, fn_, max_degree);
    }
    throw std::logic_error("to_harmonic: unreachable");
}

double harmonic_eigen_defect(const HarmonicSum& h, int samples, uint64_t seed) {
    Rng rng(seed);
    const int N = h.N;
    double worst = 0.0;
    for (const auto& term : h.terms) {
        auto ext = [&](const Vec& x) {
            double r = norm(x);
            Vec th = scaled(x, 1.0 / r);
            return std::pow(r, term.degree) * term.eval(th, N);
        };
        for (int s = 0; s < samples; ++s) {
            Vec x = rng.next_sphere(N);
            double scale = std::abs(term.eval(x, N)) * (term.degree + 1.0) * (term.degree + N) + 1e-3;
            auto lap = [&](double hstep) {
                double l = 0.0;
                for (int i = 0; i < N; ++i) {
                    Vec xp = x, xm = x;
                    xp[i] += hstep;
                    xm[i] -= hstep;
                    l += ext(xp) - 2.0 * ext(x) + ext(xm);
                }
                return l / (hstep * hstep);
            };
            double l1 = lap(1e-2), l2 = lap(5e-3);
            double richardson = (4.0 * l2 - l1) / 3.0;
            worst = std::max(worst, std::abs(richardson) / scale);
        }
    }
    return worst;
}

}  // namespace bpgeo
