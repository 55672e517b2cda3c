#pragma once

#include <cstdint>

namespace scpoly {

/// SplitMix64 (Steele, Lea, Flood 2014). Used for every random draw in the
/// library so that seeded runs replicate bit-for-bit across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/// Seed of the stream for sample `index` of a run seeded with `seed`.
/// Index-based so that parallel and serial runs draw identical samples.
inline std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (index * 0xd1342543de82ef95ULL));
    mix.next();
    return mix.next();
}

}  // namespace scpoly
