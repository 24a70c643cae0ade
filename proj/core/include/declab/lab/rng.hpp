#ifndef DECLAB_LAB_RNG_HPP
#define DECLAB_LAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace declab::lab {

/// SplitMix64: the 64-bit splittable counter-based generator used for every
/// randomized state in the lab.  The sequence is fully determined by the
/// config seed, and substreams are derived by mixing the stream index into
/// the seed, so sweep points draw independent, reproducible streams.
///
/// next():    state += 0x9E3779B97F4A7C15; z = mix(state)  (Stafford mix13)
/// substream: seed' = mix(seed + (index + 1) * 0x9E3779B97F4A7C15)
/// doubles:   top 53 bits of next() scaled by 2^-53, uniform in [0, 1)
/// gaussians: Box-Muller on consecutive uniform pairs
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (uses two uniforms per pair of calls).
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        const double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(th);
        have_cached_ = true;
        return r * std::cos(th);
    }

    SplitMix64 substream(std::uint64_t index) const {
        std::uint64_t z = state_ + (index + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return SplitMix64(z ^ (z >> 31));
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace declab::lab

#endif
