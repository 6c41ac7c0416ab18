#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "bpgeo/linalg.hpp"

namespace bpgeo {

// Sparse multivariate polynomial in up to 8 variables.
struct MPoly {
    using Key = std::array<uint8_t, 8>;
    int nvars = 0;
    std::map<Key, double> terms;

    static Key zero_key() { return Key{0, 0, 0, 0, 0, 0, 0, 0}; }

    static MPoly constant(int nvars, double c) {
        MPoly p;
        p.nvars = nvars;
        if (c != 0.0) p.terms[zero_key()] = c;
        return p;
    }

    static MPoly variable(int nvars, int i, double c = 1.0) {
        MPoly p;
        p.nvars = nvars;
        Key k = zero_key();
        k[i] = 1;
        p.terms[k] = c;
        return p;
    }

    void add_term(const Key& k, double c) {
        auto it = terms.find(k);
        if (it == terms.end()) {
            if (c != 0.0) terms[k] = c;
        } else {
            it->second += c;
            if (std::abs(it->second) < 1e-300) terms.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [k, c] : o.terms) add_term(k, c);
        return *this;
    }

    MPoly& operator-=(const MPoly& o) {
        for (const auto& [k, c] : o.terms) add_term(k, -c);
        return *this;
    }

    MPoly& operator*=(double c) {
        for (auto& [k, v] : terms) v *= c;
        return *this;
    }

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, double c) { return a *= c; }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        r.nvars = std::max(a.nvars, b.nvars);
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms) {
                Key k;
                for (int i = 0; i < 8; ++i) k[i] = static_cast<uint8_t>(ka[i] + kb[i]);
                r.add_term(k, ca * cb);
            }
        return r;
    }

    MPoly pow(int e) const {
        MPoly r = constant(nvars, 1.0);
        for (int i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    int degree() const {
        int d = 0;
        for (const auto& [k, c] : terms) {
            int s = 0;
            for (int i = 0; i < nvars; ++i) s += k[i];
            d = std::max(d, s);
        }
        return d;
    }

    double eval(const double* v) const {
        double s = 0.0;
        for (const auto& [k, c] : terms) {
            double t = c;
            for (int i = 0; i < nvars; ++i)
                for (int e = 0; e < k[i]; ++e) t *= v[i];
            s += t;
        }
        return s;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [k, c] : terms) m = std::max(m, std::abs(c));
        return m;
    }
};

// n blocks of coordinates; u_j = |x_j|^2 are the squared block radii. On the
// unit sphere u lies on the simplex and is Dirichlet(d_1/2, ..., d_m/2)
// distributed, which makes all polynomial moments exact Gamma ratios.
struct BlockStructure {
    std::vector<int> dims;

    int nblocks() const { return static_cast<int>(dims.size()); }
    int N() const {
        int s = 0;
        for (int d : dims) s += d;
        return s;
    }

    bool operator<(const BlockStructure& o) const { return dims < o.dims; }
    bool operator==(const BlockStructure& o) const { return dims == o.dims; }

    // block radii squared from a point of R^N
    Vec radii2(const Vec& x) const {
        Vec u(dims.size());
        int off = 0;
        for (size_t j = 0; j < dims.size(); ++j) {
            double s = 0.0;
            for (int i = 0; i < dims[j]; ++i) s += x[off + i] * x[off + i];
            u[j] = s;
            off += dims[j];
        }
        return u;
    }

    static BlockStructure equal_blocks(int n, int d) {
        BlockStructure bs;
        bs.dims.assign(n, d);
        return bs;
    }
};

// E[prod_j u_j^{k_j}] for u ~ Dirichlet(d_1/2, ..., d_m/2). Exponents beyond
// the reduced variables (first m-1) are zero by construction.
double dirichlet_moment(const BlockStructure& bs, const MPoly::Key& k);

// E[prod_i x_i^{c_i}] over S^{N-1} (probability measure); zero if any c_i odd.
double sphere_moment(int N, const MPoly::Key& c);

// Orthonormal basis of the block-invariant (polyradial) spherical harmonics
// up to x-degree `max_degree`, as polynomials in the reduced variables
// u_1..u_{m-1}. Element k of `degrees` gives the harmonic degree (always even).
class BlockHarmonicBasis {
  public:
    BlockHarmonicBasis(const BlockStructure& bs, int max_degree);

    const BlockStructure& structure() const { return bs_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const MPoly& element(int i) const { return elems_[i]; }
    int degree(int i) const { return degrees_[i]; }

    // exact inner products / projection of reduced u-polynomials
    double inner(const MPoly& a, const MPoly& b) const;
    std::vector<double> project(const MPoly& f) const;

    // shared, cached per (structure, degree)
    static const BlockHarmonicBasis& get(const BlockStructure& bs, int max_degree);

  private:
    BlockStructure bs_;
    std::vector<MPoly> elems_;
    std::vector<int> degrees_;
};

// Orthonormal basis of even spherical harmonics on S^{N-1} (N <= 4) up to
// x-degree max_degree, as polynomials in x. Used for dense-grid projection of
// black-box functions.
class XHarmonicBasis {
  public:
    XHarmonicBasis(int N, int max_degree);

    int N() const { return N_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const MPoly& element(int i) const { return elems_[i]; }
    int degree(int i) const { return degrees_[i]; }

    static const XHarmonicBasis& get(int N, int max_degree);

  private:
    int N_;
    std::vector<MPoly> elems_;
    std::vector<int> degrees_;
};

}  // namespace bpgeo
