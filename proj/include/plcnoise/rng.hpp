#pragma once

#include <array>
#include <cmath>
#include <cstdint>

// Self-contained random number stack.  The standard library distributions
// are implementation-defined, so identical seeds would not reproduce across
// compilers; everything here is fully specified and therefore portable
// bit-for-bit.  Generator: xoshiro256++ seeded through splitmix64
// (Blackman & Vigna, https://prng.di.unimi.it/).

namespace plcnoise {

namespace detail {

// splitmix64 output mixer.  Also used standalone to derive stream seeds.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state);
}

} // namespace detail

// Derives the seed for sub-stream `stream` of a base seed.  Mixing the
// stream index through splitmix64 keeps derived streams decorrelated even
// for adjacent indices; the offset keeps derive_seed(base, 0) != base.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return base ^ detail::splitmix64_mix(stream + 0x9E3779B97F4A7C15ULL);
}

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        // Seeding via splitmix64 as recommended by the xoshiro authors; the
        // all-zero state is unreachable this way.
        std::uint64_t s = seed;
        for (auto& word : state_) word = detail::splitmix64_next(s);
    }

    std::uint64_t next() {
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

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

// Deterministic double-precision sampler on top of Xoshiro256pp.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_.next(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_.next() >> 11) * 0x1.0p-53;
    }

    // Uniform on the open interval (0, 1); safe as a log() argument.
    double uniform_open01() {
        return (static_cast<double>(engine_.next() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on the open interval (lo, hi).
    double uniform_open(double lo, double hi) {
        return lo + (hi - lo) * uniform_open01();
    }

    // Standard normal via the Marsaglia polar method; the spare deviate is
    // cached, so draws come in deterministic pairs.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Standard exponential (rate 1).
    double exponential() { return -std::log(uniform_open01()); }

private:
    Xoshiro256pp engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace plcnoise
