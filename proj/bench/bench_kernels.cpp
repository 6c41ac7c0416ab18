// Compares the OpenMP kernels against the serial reference on representative
// workloads and confirms bit-identical results (the reductions are chunked,
// so the combine order never depends on the thread count).

#include <chrono>
#include <cstdio>

#include "bpgeo/bodies.hpp"
#include "bpgeo/bp.hpp"
#include "bpgeo/config.hpp"
#include "bpgeo/kernels.hpp"
#include "bpgeo/quadsphere.hpp"

using namespace bpgeo;

namespace {

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    std::printf("%-34s %12s %12s %9s %s\n", "kernel", "serial [s]", "parallel [s]", "speedup",
                "bit-identical");

    {
        StarBody K = ball_block_lp(2, 4, 4.0);
        auto rho8 = [&](const Vec& x) { return std::pow(K.rho(x), 8); };
        const uint64_t n = 4000000;
        kernels::MeanResult a, b;
        double ts = timed([&] { a = mc_sphere_mean(8, n, 7, rho8, kernels::Mode::Serial); });
        double tp = timed([&] { b = mc_sphere_mean(8, n, 7, rho8, kernels::Mode::Parallel); });
        std::printf("%-34s %12.3f %12.3f %8.2fx %s\n", "mc volume, block-l4 ball in R^8", ts, tp,
                    ts / tp, (a.mean == b.mean && a.se == b.se) ? "yes" : "NO");
    }

    {
        BlockStructure bs = BlockStructure::equal_blocks(4, 2);
        HarmonicSum pw = HarmonicSum::constant(8, 1.0);
        pw += block_moment_harmonic(bs, 4).scaled(-0.2);
        StarBody K = body_from_power_hsum(8, 6.0, pw, SymmetryTag{2, 4, Chirality::Left});
        StarBody L = make_ball(8, 1.02);
        auto diff = [&](const Vec& x) {
            return std::pow(K.rho(x), 8) - std::pow(L.rho(x), 8);
        };
        const uint64_t n = 2000000;
        kernels::MeanResult a, b;
        double ts = timed([&] { a = mc_sphere_mean(8, n, 9, diff, kernels::Mode::Serial); });
        double tp = timed([&] { b = mc_sphere_mean(8, n, 9, diff, kernels::Mode::Parallel); });
        std::printf("%-34s %12.3f %12.3f %8.2fx %s\n", "paired volume difference", ts, tp, ts / tp,
                    (a.mean == b.mean && a.se == b.se) ? "yes" : "NO");
    }

    {
        BlockStructure bs = BlockStructure::equal_blocks(4, 2);
        HarmonicSum pw = HarmonicSum::constant(8, 1.0);
        pw += block_moment_harmonic(bs, 4).scaled(-0.2);
        HarmonicSum m = cosine_transform(pw, -1.0);
        ThetaGrid grid = make_theta_grid(8, 65536);
        std::vector<double> a, b;
        auto eval = [&](uint64_t i) { return m.eval(grid.points[i]); };
        double ts = timed([&] { a = kernels::map_grid(grid.points.size(), eval, kernels::Mode::Serial); });
        double tp = timed([&] { b = kernels::map_grid(grid.points.size(), eval, kernels::Mode::Parallel); });
        bool same = a == b;
        std::printf("%-34s %12.3f %12.3f %8.2fx %s\n", "grid scan, multiplier transform", ts, tp,
                    ts / tp, same ? "yes" : "NO");
    }
    return 0;
}
