#pragma once

#include <cstdint>

namespace psearch {

/// splitmix64 step; the generator behind every random choice in this project.
/// Hand-rolled (instead of <random>) so that sequences are identical on every
/// platform: std::uniform_int_distribution output is implementation-defined.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Deterministic 64-bit generator.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform draw from [0, bound); bound must be >= 1.
    /// Lemire multiply-shift: deterministic, no rejection loop.
    std::uint64_t below(std::uint64_t bound) {
        const unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool coin() { return (next() & 1u) != 0; }

  private:
    std::uint64_t state_;
};

/// Derives an independent seed for stream `stream` of a base seed.
/// Fixed documented constant: golden-ratio increment 0x9E3779B97F4A7C15.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base + 0x9E3779B97F4A7C15ull * (stream + 1);
    return splitmix64(s);
}

}  // namespace psearch
