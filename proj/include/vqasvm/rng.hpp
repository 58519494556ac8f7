#pragma once

#include <cstdint>
#include <cstddef>

namespace vqasvm {

// Counter-based pseudo-random stream keyed by (seed, stream). Two generators
// built from the same key produce the same sequence regardless of what other
// streams were drawn in between, so parallel evaluation order never changes
// results. Output is platform-independent (no std::*_distribution involved).
class KeyedRng {
  public:
    KeyedRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : state_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL))) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_double(double lo, double hi) noexcept {
        return lo + (hi - lo) * next_double();
    }

    /// Rademacher variate: +1 or -1 with equal probability.
    int next_sign() noexcept { return (next_u64() >> 63) ? 1 : -1; }

    /// Uniform integer in [0, n).
    std::size_t next_index(std::size_t n) noexcept {
        // 64-bit multiply-shift; bias is negligible for the n used here.
        return static_cast<std::size_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Stable seed for a named sub-stream of a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return KeyedRng(seed, stream).next_u64();
}

} // namespace vqasvm
