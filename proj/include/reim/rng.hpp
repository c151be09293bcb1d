// Seeded pseudo-random generation for the reproducible parameter sweeps and
// the random SPD test operators.
#pragma once

#include <cmath>
#include <cstdint>

#include "reim/numerics.hpp"

namespace reim {

// splitmix64; deterministic across platforms for a fixed seed.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double log_uniform(double a, double b) {
        return std::exp(uniform(std::log(a), std::log(b)));
    }

    // Box-Muller, one draw per call (the sine partner is discarded to keep
    // the stream position easy to reason about)
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0,1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }
};

// Symmetric matrix with the exact prescribed spectrum: start from the
// diagonal and conjugate by random Givens rotations, which preserves both
// symmetry and eigenvalues.
inline DenseMatrix random_spd(const Vec& spectrum, SplitMix64& rng) {
    const int n = static_cast<int>(spectrum.size());
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i) a.at(i, i) = spectrum[i];
    const int rotations = 3 * n;
    for (int r = 0; r < rotations; ++r) {
        const int i = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
        int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n - 1));
        if (j >= i) ++j;
        const double theta = rng.uniform(0.0, 6.283185307179586477);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
            const double aki = a.at(k, i), akj = a.at(k, j);
            a.at(k, i) = c * aki - s * akj;
            a.at(k, j) = s * aki + c * akj;
        }
        for (int k = 0; k < n; ++k) {
            const double aik = a.at(i, k), ajk = a.at(j, k);
            a.at(i, k) = c * aik - s * ajk;
            a.at(j, k) = s * aik + c * ajk;
        }
    }
    // exact symmetrization wipes the last bits of rounding skew
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a.at(i, j) + a.at(j, i));
            a.at(i, j) = v;
            a.at(j, i) = v;
        }
    return a;
}

}  // namespace reim
