#pragma once

#include <cstdint>
#include <random>

namespace biswarm {

/// Seedable random stream with a stable cross-platform mapping from bits to
/// uniform doubles and bounded integers. Substreams are derived from
/// (seed, a, b) tuples so per-particle, per-generation streams are
/// independent of evaluation order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        std::uint64_t s = mix(seed);
        s = mix(s ^ (0x9e3779b97f4a7c15ULL + a));
        s = mix(s ^ (0xbf58476d1ce4e5b9ULL + b));
        return Rng(raw_tag{}, s);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be > 0.
    std::size_t below(std::size_t n) {
        // Lemire multiply-shift; bias is < 2^-64 per draw, no rejection loop.
        const auto x = next_u64();
        const auto m = static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(n);
        return static_cast<std::size_t>(m >> 64);
    }

    bool chance(double p) { return uniform01() < p; }

private:
    struct raw_tag {};
    Rng(raw_tag, std::uint64_t pre_mixed) : engine_(pre_mixed) {}

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace biswarm
