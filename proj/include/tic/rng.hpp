#pragma once

#include <array>
#include <bit>
#include <cstdint>

#include "tic/error.hpp"

namespace tic {

// splitmix64 step (Steele/Lea/Flood); used only to expand seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// xoshiro256** (Blackman/Vigna, public domain). One instance per simulation
// stream: streams are derived from (master seed, stream index), so results are
// independent of how simulations are scheduled across workers, and output is
// bit-stable across standard-library versions.
class Rng {
  public:
    static Rng seeded(std::uint64_t seed) { return Rng(seed); }

    static Rng stream(std::uint64_t master_seed, std::uint64_t stream_index) {
        return Rng(master_seed ^ (stream_index + 1) * 0xD1B54A32D192ED03ull);
    }

    std::uint64_t next() {
        const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 random bits. For dyadic p, next_double() < p
    // is an exact Bernoulli(p) trial.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), unbiased (power-of-two rejection).
    std::uint64_t next_index(std::uint64_t n) {
        if (n == 0) throw InvalidArgument("next_index: n must be positive");
        const std::uint64_t mask = std::bit_ceil(n) - 1;
        for (;;) {
            const std::uint64_t x = next() & mask;
            if (x < n) return x;
        }
    }

  private:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    std::array<std::uint64_t, 4> s_;
};

} // namespace tic
