// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file rng.hpp
 * @brief SplitMix64: the project's pinned pseudo-random generator.
 *
 * Sebastiano Vigna's SplitMix64 (public domain). A counter-based mix of a
 * Weyl sequence, so streams are reproducible bit-exactly across platforms
 * from a 64-bit seed; uniform doubles use the top 53 bits. Seeded trajectories
 * in tests and the CLI depend on this generator never changing.
 */

#include <cstdint>

namespace cgentropy {

class SplitMix64 {
    std::uint64_t state_;

  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., bound-1} via 128-bit multiply-shift.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }
};

}  // namespace cgentropy
