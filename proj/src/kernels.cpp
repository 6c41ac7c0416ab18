#include "bpgeo/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bpgeo::kernels {

void chunked_accumulate(uint64_t n, Mode mode,
                        const std::function<void(uint64_t, uint64_t, uint64_t, double&, double&)>& chunk_fn,
                        double& sum, double& sumsq) {
    const uint64_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> csum(nchunks, 0.0), csq(nchunks, 0.0);
    if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int64_t c = 0; c < static_cast<int64_t>(nchunks); ++c) {
            uint64_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
            chunk_fn(c, lo, hi, csum[c], csq[c]);
        }
    } else {
        for (uint64_t c = 0; c < nchunks; ++c) {
            uint64_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
            chunk_fn(c, lo, hi, csum[c], csq[c]);
        }
    }
    sum = 0.0;
    sumsq = 0.0;
    for (uint64_t c = 0; c < nchunks; ++c) {
        sum += csum[c];
        sumsq += csq[c];
    }
}

MeanResult reduce_mean(uint64_t n, const std::function<double(uint64_t)>& f, Mode mode) {
    double sum = 0.0, sumsq = 0.0;
    chunked_accumulate(n, mode,
                       [&](uint64_t, uint64_t lo, uint64_t hi, double& s, double& q) {
                           for (uint64_t i = lo; i < hi; ++i) {
                               double v = f(i);
                               s += v;
                               q += v * v;
                           }
                       },
                       sum, sumsq);
    MeanResult r;
    r.count = n;
    if (n == 0) return r;
    r.mean = sum / n;
    if (n > 1) {
        double var = (sumsq - sum * sum / n) / (n - 1.0);
        r.se = var > 0.0 ? std::sqrt(var / n) : 0.0;
    }
    return r;
}

MeanResult reduce_mean_serial(uint64_t n, const std::function<double(uint64_t)>& f) {
    return reduce_mean(n, f, Mode::Serial);
}

std::vector<double> map_grid(uint64_t n, const std::function<double(uint64_t)>& f, Mode mode) {
    std::vector<double> out(n);
    if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) out[i] = f(i);
    } else {
        for (uint64_t i = 0; i < n; ++i) out[i] = f(i);
    }
    return out;
}

}  // namespace bpgeo::kernels
