#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace corrbits {

// Generator identifier recorded in every report. Bump the suffix if the
// algorithm or the seed-derivation formula ever changes.
inline constexpr const char* kRngId = "xoshiro256starstar/splitmix64-v1";

// splitmix64 step (Vigna's recommended seeder for the xoshiro family).
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stateless finalizer form, used for seed derivation.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    std::uint64_t s = z;
    return splitmix64_next(s);
}

// Child seed for shard / term `stream` of a run keyed by `master`. Streams are
// independent for distinct indices; aggregation order never matters.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ mix64(stream + 0x632BE59BD9B4E019ULL));
}

// xoshiro256**: 64-bit all-purpose generator, fully specified so runs are
// bit-reproducible across platforms. Sphere sampling is rejection-based on
// purpose: sqrt and division are IEEE-exact, libm trig is not.
class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256StarStar(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 significant bits.
    double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

    // Single unbiased bit.
    bool bit() { return (operator()() >> 63) != 0; }

    // Bernoulli draw: true with probability p.
    bool bernoulli(double p) { return uniform() < p; }

    // Uniform direction on the unit sphere (rejection from the cube).
    std::array<double, 3> unit_vector() {
        for (;;) {
            const double x = 2.0 * uniform() - 1.0;
            const double y = 2.0 * uniform() - 1.0;
            const double z = 2.0 * uniform() - 1.0;
            const double r2 = x * x + y * y + z * z;
            if (r2 > 1.0 || r2 < 1e-12) continue;
            const double inv = 1.0 / std::sqrt(r2);
            return {x * inv, y * inv, z * inv};
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace corrbits
