#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace sipsim {

/// splitmix64 step; used for seeding and stream derivation.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic PRNG (xoshiro256**) with explicit stream derivation.
/// All stochastic pieces of the simulator draw from this type so that a
/// (seed, stream-tag) pair fully reproduces a run.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    /// Independent child stream; mixing is order-sensitive, so
    /// derive(a).derive(b) != derive(b).derive(a).
    [[nodiscard]] Rng derive(std::uint64_t tag) const {
        std::uint64_t sm = s_[0] ^ (s_[1] + 0x632be59bd9b4e019ULL * (tag + 1));
        std::uint64_t mixed = splitmix64_next(sm) ^ s_[2];
        return Rng(mixed ^ (tag * 0xd1342543de82ef95ULL));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    int bit() { return static_cast<int>(next_u64() >> 63); }

    /// Standard normal via Box-Muller (no cached spare, keeps streams simple).
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0x1.0p-60) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> cgaussian(double variance) {
        const double s = std::sqrt(variance / 2.0);
        return {s * gaussian(), s * gaussian()};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace sipsim
