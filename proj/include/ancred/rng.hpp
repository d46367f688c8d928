#pragma once

#include <cstdint>

#include "ancred/numerics.hpp"

namespace ancred {

/// Counter-based generator: the SplitMix64 finalizer applied to
/// seed + (counter+1) * golden-ratio increment.  Draw k of a seeded
/// stream is a pure function of (seed, k), so any sharding of the index
/// range reproduces the sequential stream exactly.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform draw strictly inside (0,1); never exactly 0.5, so
    /// inverse-CDF normal deviates are never exactly zero.
    double uniform(std::uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal deviate via the inverse-CDF transform.
    double normal(std::uint64_t counter) const {
        return std_normal_quantile(uniform(counter));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

} // namespace ancred
