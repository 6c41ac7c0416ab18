#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bpgeo/linalg.hpp"

namespace bpgeo {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Small counter-free generator (xoshiro256**), seeded via splitmix64 so that
// independent streams can be derived from (root seed, stream id).
class Rng {
  public:
    explicit Rng(uint64_t seed, uint64_t stream = 0) {
        uint64_t sm = seed ^ (0x632be59bd9b4e019ULL * (stream + 1));
        for (auto& s : s_) s = splitmix64(sm);
    }

    uint64_t next_u64() {
        auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in (0,1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double(), u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * kPiLocal * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // uniform point on S^{N-1}
    Vec next_sphere(int N) {
        Vec x(N);
        double n2;
        do {
            n2 = 0.0;
            for (int i = 0; i < N; ++i) {
                x[i] = next_gaussian();
                n2 += x[i] * x[i];
            }
        } while (n2 < 1e-12);
        double inv = 1.0 / std::sqrt(n2);
        for (double& v : x) v *= inv;
        return x;
    }

  private:
    static constexpr double kPiLocal = 3.14159265358979323846;
    uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Radical-inverse (van der Corput) in the given prime base.
inline double radical_inverse(uint64_t i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

// Deterministic low-discrepancy grid on S^{N-1}: Halton points mapped through
// Box-Muller pairs and normalized. Seedless and reproducible.
inline std::vector<Vec> low_discrepancy_sphere(int N, int count) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
    const int pairs = (N + 1) / 2;
    std::vector<Vec> pts;
    pts.reserve(count);
    constexpr double pi = 3.14159265358979323846;
    for (uint64_t i = 1; static_cast<int>(pts.size()) < count; ++i) {
        Vec x(N);
        for (int p = 0; p < pairs; ++p) {
            double u1 = radical_inverse(i, primes[2 * p]);
            double u2 = radical_inverse(i, primes[2 * p + 1]);
            if (u1 < 1e-16) u1 = 1e-16;
            double r = std::sqrt(-2.0 * std::log(u1));
            if (2 * p < N) x[2 * p] = r * std::cos(2.0 * pi * u2);
            if (2 * p + 1 < N) x[2 * p + 1] = r * std::sin(2.0 * pi * u2);
        }
        double n = norm(x);
        if (n < 1e-9) continue;
        pts.push_back(scaled(x, 1.0 / n));
    }
    return pts;
}

}  // namespace bpgeo
