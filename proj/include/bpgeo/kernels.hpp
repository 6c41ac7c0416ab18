#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace bpgeo::kernels {

// Parallelism switch. Results are identical either way: work is split into
// fixed-size chunks whose partial sums are combined in chunk order, so the
// floating-point reduction order never depends on the thread count.
enum class Mode { Serial, Parallel };

inline Mode& default_mode() {
    static Mode m = Mode::Parallel;
    return m;
}

struct MeanResult {
    double mean = 0.0;
    double se = 0.0;       // standard error of the mean
    uint64_t count = 0;
};

constexpr uint64_t kChunk = 8192;

// chunk_fn(chunk_index, lo, hi, &sum, &sumsq) accumulates f(i) for i in [lo,hi).
void chunked_accumulate(uint64_t n, Mode mode,
                        const std::function<void(uint64_t, uint64_t, uint64_t, double&, double&)>& chunk_fn,
                        double& sum, double& sumsq);

// Mean and standard error of f(i), i = 0..n-1.
MeanResult reduce_mean(uint64_t n, const std::function<double(uint64_t)>& f,
                       Mode mode = default_mode());

// Serial reference implementation with the same chunking (kept for tests and
// the benchmark target).
MeanResult reduce_mean_serial(uint64_t n, const std::function<double(uint64_t)>& f);

// Evaluates f on each index of a grid, deterministic output order.
std::vector<double> map_grid(uint64_t n, const std::function<double(uint64_t)>& f,
                             Mode mode = default_mode());

}  // namespace bpgeo::kernels
