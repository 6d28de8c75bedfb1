#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace discrim {

// SplitMix64 finalizer. Bijective on 64-bit words, used both as the mixing
// stage of the counter-based generator and to derive per-restart seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic seed for stream `index` derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

inline double to_unit_double(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Stateless counter-based generator: the value at (trial, slot) depends only
// on the key, so trials can be evaluated in any order or partitioning with
// bit-identical results.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(mix64(seed ^ 0xA5A5A5A55A5A5A5AULL)) {}

    double uniform(std::uint64_t trial, std::uint64_t slot) const {
        std::uint64_t base = mix64(key_ ^ (trial + 1) * 0x9E3779B97F4A7C15ULL);
        return to_unit_double(mix64(base + slot * 0xD1B54A32D192ED03ULL));
    }

private:
    std::uint64_t key_;
};

// Small sequential generator (SplitMix64 stream) for optimizer restarts.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return to_unit_double(next()); }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace discrim
