#pragma once

#include <cstdint>

namespace tensym {

/// SplitMix64. Used everywhere seeded randomness is needed so that runs are
/// reproducible across platforms; std::uniform_int_distribution is
/// implementation-defined and would not be.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(next()); // full 64-bit span
        // Rejection sampling keeps the distribution exactly uniform.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % range);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace tensym
