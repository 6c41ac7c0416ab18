#include "bpgeo/blockpoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>

#include "bpgeo/specfun.hpp"

namespace bpgeo {

double dirichlet_moment(const BlockStructure& bs, const MPoly::Key& k) {
    const int m = bs.nblocks();
    double A = 0.0;
    for (int d : bs.dims) A += 0.5 * d;
    double K = 0.0;
    double lg = 0.0;
    for (int j = 0; j < m; ++j) {
        if (k[j] == 0) continue;
        double a = 0.5 * bs.dims[j];
        lg += std::lgamma(a + k[j]) - std::lgamma(a);
        K += k[j];
    }
    lg += std::lgamma(A) - std::lgamma(A + K);
    return std::exp(lg);
}

double sphere_moment(int N, const MPoly::Key& c) {
    double A = 0.0;
    double lg = 0.0;
    for (int i = 0; i < N; ++i) {
        if (c[i] % 2 == 1) return 0.0;
        if (c[i] == 0) continue;
        double a = 0.5 * c[i];
        lg += std::lgamma(a + 0.5) - std::lgamma(0.5);
        A += a;
    }
    lg += std::lgamma(0.5 * N) - std::lgamma(0.5 * N + A);
    return std::exp(lg);
}

namespace {

void enumerate_keys(int nv, int deg, int pos, MPoly::Key cur, std::vector<MPoly::Key>& out) {
    if (pos == nv - 1) {
        cur[pos] = static_cast<uint8_t>(deg);
        out.push_back(cur);
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur[pos] = static_cast<uint8_t>(e);
        enumerate_keys(nv, deg - e, pos + 1, cur, out);
    }
}

// cyclic Jacobi eigendecomposition of a symmetric matrix
void sym_eig_jacobi(Mat A, std::vector<double>& evals, Mat& V) {
    const int n = A.rows();
    V = Mat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-28 * n * n) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = A(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double tau = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
    }
    evals.resize(n);
    for (int i = 0; i < n; ++i) evals[i] = A(i, i);
}

int harmonic_dim(int N, int j) {
    if (j == 0) return 1;
    auto binom = [](int a, int b) {
        if (b < 0 || b > a) return 0.0;
        double r = 1.0;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    return static_cast<int>(std::lround(binom(N + j - 1, N - 1) - binom(N + j - 3, N - 1)));
}

// top harmonic component of a homogeneous polynomial of degree j:
// h = sum_k c_k |x|^{2k} Lap^k P with c_0 = 1, c_k = -c_{k-1} / (4k (j + N/2 - 1 - k))
MPoly maxwell_top(const MPoly& P, int j, int N,
                  const std::function<MPoly(const MPoly&)>& laplacian, const MPoly& r2) {
    MPoly h = P;
    MPoly lap = P;
    MPoly r2pow = MPoly::constant(P.nvars, 1.0);
    double c = 1.0;
    for (int k = 1; 2 * k <= j; ++k) {
        lap = laplacian(lap);
        if (lap.terms.empty()) break;
        r2pow = r2pow * r2;
        c = -c / (4.0 * k * (j + 0.5 * N - 1.0 - k));
        MPoly t = r2pow * lap;
        t *= c;
        h += t;
    }
    return h;
}

// Within-degree orthonormalization: spectral pass on the Gram matrix, keeping
// the leading `rank` directions, then one modified Gram-Schmidt polish.
template <class InnerFn>
void orthonormalize_block(std::vector<MPoly>& cand, int rank, InnerFn inner,
                          std::vector<MPoly>& out) {
    const int m = static_cast<int>(cand.size());
    Mat G(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) G(a, b) = G(b, a) = inner(cand[a], cand[b]);
    std::vector<double> evals;
    Mat V(m, m);
    sym_eig_jacobi(G, evals, V);
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return evals[a] > evals[b]; });
    if (rank < 0) {
        rank = 0;
        double top = evals.empty() ? 0.0 : std::max(evals[order[0]], 1e-300);
        while (rank < m && evals[order[rank]] > 1e-24 * top) ++rank;
    }
    std::vector<MPoly> block;
    for (int r = 0; r < rank; ++r) {
        int col = order[r];
        if (!(evals[col] > 0.0)) throw std::runtime_error("harmonic basis: rank deficiency");
        MPoly e = MPoly::constant(cand.empty() ? 0 : cand[0].nvars, 0.0);
        double inv = 1.0 / std::sqrt(evals[col]);
        for (int k = 0; k < m; ++k) {
            MPoly t = cand[k];
            t *= V(k, col) * inv;
            e += t;
        }
        block.push_back(std::move(e));
    }
    // MGS polish within the block
    for (size_t i = 0; i < block.size(); ++i) {
        for (int pass = 0; pass < 2; ++pass)
            for (size_t k = 0; k < i; ++k) {
                double c = inner(block[i], block[k]);
                MPoly t = block[k];
                t *= -c;
                block[i] += t;
            }
        double n2 = inner(block[i], block[i]);
        block[i] *= 1.0 / std::sqrt(n2);
    }
    for (auto& e : block) out.push_back(std::move(e));
}

}  // namespace

BlockHarmonicBasis::BlockHarmonicBasis(const BlockStructure& bs, int max_degree) : bs_(bs) {
    const int m = bs.nblocks();
    const int N = bs.N();
    elems_.push_back(MPoly::constant(m, 1.0));
    degrees_.push_back(0);
    if (m < 2) return;
    MPoly r2 = MPoly::constant(m, 0.0);
    for (int j = 0; j < m; ++j) r2 += MPoly::variable(m, j);
    auto lap = [&](const MPoly& p) {
        // Laplacian of f(u), u_j = |x_j|^2: sum_j (4 u_j d^2/du_j^2 + 2 d_j d/du_j)
        MPoly out = MPoly::constant(m, 0.0);
        for (const auto& [k, c] : p.terms)
            for (int j = 0; j < m; ++j) {
                int e = k[j];
                if (e == 0) continue;
                MPoly::Key k1 = k;
                k1[j] = static_cast<uint8_t>(e - 1);
                out.add_term(k1, c * (4.0 * e * (e - 1) + 2.0 * bs.dims[j] * e));
                // 4 u d^2/du^2 keeps degree e-1 after multiplying back by u
            }
        return out;
    };
    auto ip = [this](const MPoly& a, const MPoly& b) { return inner(a, b); };
    for (int k = 1; 2 * k <= max_degree; ++k) {
        std::vector<MPoly::Key> keys;
        enumerate_keys(m, k, 0, MPoly::zero_key(), keys);
        std::vector<MPoly> cand;
        for (const auto& key : keys) {
            MPoly p;
            p.nvars = m;
            p.terms[key] = 1.0;
            cand.push_back(maxwell_top(p, 2 * k, N, lap, r2));
        }
        // rank: homogeneous u-monomials of degree k modulo (sum u)*lower
        int rank = static_cast<int>(keys.size());
        {
            std::vector<MPoly::Key> lower;
            if (k >= 1) enumerate_keys(m, k - 1, 0, MPoly::zero_key(), lower);
            rank -= static_cast<int>(lower.size());
        }
        orthonormalize_block(cand, rank, ip, elems_);
        while (degrees_.size() < elems_.size()) degrees_.push_back(2 * k);
    }
}

double BlockHarmonicBasis::inner(const MPoly& a, const MPoly& b) const {
    double s = 0.0;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            MPoly::Key k;
            for (int i = 0; i < 8; ++i) k[i] = static_cast<uint8_t>(ka[i] + kb[i]);
            s += ca * cb * dirichlet_moment(bs_, k);
        }
    return s;
}

std::vector<double> BlockHarmonicBasis::project(const MPoly& f) const {
    // f may use the reduced convention (m-1 variables); moments ignore the
    // missing exponent, so mixed keys are fine
    std::vector<double> c(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i) c[i] = inner(f, elems_[i]);
    return c;
}

const BlockHarmonicBasis& BlockHarmonicBasis::get(const BlockStructure& bs, int max_degree) {
    static std::map<std::pair<std::vector<int>, int>, BlockHarmonicBasis> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(bs.dims, max_degree);
    auto it = cache.lower_bound(key);
    // reuse any cached basis with the same structure and at least this degree
    for (auto jt = cache.begin(); jt != cache.end(); ++jt)
        if (jt->first.first == bs.dims && jt->first.second >= max_degree) return jt->second;
    it = cache.emplace_hint(it, key, BlockHarmonicBasis(bs, max_degree));
    return it->second;
}

XHarmonicBasis::XHarmonicBasis(int N, int max_degree) : N_(N) {
    if (N > 4) throw std::invalid_argument("XHarmonicBasis: supported for N <= 4");
    MPoly r2 = MPoly::constant(N, 0.0);
    for (int i = 0; i < N; ++i) r2 += MPoly::variable(N, i) * MPoly::variable(N, i);
    auto lap = [N](const MPoly& p) {
        MPoly out = MPoly::constant(N, 0.0);
        for (const auto& [k, c] : p.terms)
            for (int i = 0; i < N; ++i) {
                int e = k[i];
                if (e < 2) continue;
                MPoly::Key k1 = k;
                k1[i] = static_cast<uint8_t>(e - 2);
                out.add_term(k1, c * e * (e - 1));
            }
        return out;
    };
    auto ip = [N](const MPoly& a, const MPoly& b) {
        double s = 0.0;
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms) {
                MPoly::Key k;
                for (int i = 0; i < 8; ++i) k[i] = static_cast<uint8_t>(ka[i] + kb[i]);
                s += ca * cb * sphere_moment(N, k);
            }
        return s;
    };
    elems_.push_back(MPoly::constant(N, 1.0));
    degrees_.push_back(0);
    for (int deg = 2; deg <= max_degree; deg += 2) {
        std::vector<MPoly::Key> keys;
        enumerate_keys(N, deg, 0, MPoly::zero_key(), keys);
        std::vector<MPoly> cand;
        for (const auto& key : keys) {
            MPoly p;
            p.nvars = N;
            p.terms[key] = 1.0;
            cand.push_back(maxwell_top(p, deg, N, lap, r2));
        }
        orthonormalize_block(cand, harmonic_dim(N, deg), ip, elems_);
        while (degrees_.size() < elems_.size()) degrees_.push_back(deg);
    }
}

const XHarmonicBasis& XHarmonicBasis::get(int N, int max_degree) {
    static std::map<std::pair<int, int>, XHarmonicBasis> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    for (auto jt = cache.begin(); jt != cache.end(); ++jt)
        if (jt->first.first == N && jt->first.second >= max_degree) return jt->second;
    auto key = std::make_pair(N, max_degree);
    auto it = cache.emplace(key, XHarmonicBasis(N, max_degree)).first;
    return it->second;
}

}  // namespace bpgeo
