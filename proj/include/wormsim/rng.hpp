#pragma once

#include <cstdint>

namespace wormsim {

/// SplitMix64. The whole generator state is the 64-bit seed, so a seed fully
/// reproduces a stream on every platform. Scenario files and golden outputs
/// depend on this exact sequence; do not swap the algorithm.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller; one draw consumes two uniforms.
    double gaussian();

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace wormsim
