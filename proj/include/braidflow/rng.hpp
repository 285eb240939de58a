#pragma once

#include "braidflow/vec2.hpp"

#include <cstdint>

namespace braidflow {

// splitmix64: used both as a stream generator and as a seed mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic PRNG with a fully specified bit stream (xoshiro256++).
// std::mt19937_64 would also be deterministic, but the standard
// distributions are not; doubles here are built directly from bits so
// results are identical on every platform and thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // stable per-sample seed derivation for parallel runs
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
        return splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    // uniform over the open unit disc (rejection from the square)
    Vec2 point_in_unit_disc() {
        for (;;) {
            const Vec2 p{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
            if (norm2(p) < 1.0) return p;
        }
    }

    // uniform over an open disc of given center and radius
    Vec2 point_in_disc(Vec2 center, double radius) {
        return center + point_in_unit_disc() * radius;
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace braidflow
