#pragma once

#include <cstdint>

namespace osched {

/// splitmix64 finalizer. Stateless mix of a 64-bit value; also used as the
/// per-stream seed derivation primitive (see derive_stream_seed).
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ 1.0 (Blackman & Vigna, 2019), seeded from a single 64-bit
/// value through splitmix64. This generator is pinned per release: identical
/// seeds produce identical streams on every platform, which the whole
/// reproducibility contract of the simulator rests on.
///
/// Uniform doubles take the top 53 bits of an output word, giving values in
/// [0, 1). Exponential SNR draws are made by inverse CDF in channel.hpp.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// Deterministic substream seed for one sweep point. The derivation is fixed
/// (three chained splitmix64 finalizers) so that a sweep produces identical
/// results regardless of execution order or degree of parallelism:
///
///   seed' = mix64( mix64(base ^ mix64(index)) ^ tag )
inline std::uint64_t derive_stream_seed(std::uint64_t base_seed,
                                        std::uint64_t point_index,
                                        std::uint64_t stream_tag) noexcept {
    return mix64(mix64(base_seed ^ mix64(point_index)) ^ stream_tag);
}

}  // namespace osched
