#pragma once

#include <cstdint>
#include <random>

namespace allcast {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Stateless avalanche mix
// used to derive independent per-replicate seeds from (base_seed, index).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for replicate i of an experiment with the given base seed. A fixed
// function of (base_seed, i) only, so parallel scheduling cannot change the
// stream any replicate sees.
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t index) {
    return splitmix64(splitmix64(base_seed) ^ splitmix64(index + 0x1ULL));
}

// All randomness in the repo flows through this wrapper. The engine is
// std::mt19937_64 (ISO C++ [rand.predef], fully pinned by the standard);
// the derived draws below avoid std::distributions, whose output is
// implementation-defined, so results are reproducible for a given seed on
// any conforming toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53-bit resolution.
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return u01() < p; }

    // Unbiased integer in [0, bound); bound must be nonzero.
    // Lemire's multiply-shift rejection method.
    std::size_t uniform_index(std::size_t bound) {
        const std::uint64_t n = bound;
        std::uint64_t x = engine_();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                x = engine_();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::size_t>(m >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace allcast
