#pragma once

#include <cstdint>

namespace sspi {

// Counter-based pseudo-random stream: the state is derived from (seed, index)
// alone, so stream i can be opened anywhere, in any thread, and always yields
// the same draws. splitmix64 step and finalizer.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index) {
        state_ = mix(seed ^ 0x9E3779B97F4A7C15ULL) ^ mix(index + 0xBF58476D1CE4E5B9ULL);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on {0, ..., bound-1}; bound > 0. Modulo bias is irrelevant for
    // the bounds used here (all far below 2^32).
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace sspi
