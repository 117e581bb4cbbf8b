#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sbpm {

/// splitmix64 output function (Steele, Lea, Flood / Vigna reference
/// constants). Bijective on 64-bit states.
inline std::uint64_t splitmix64_scramble(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// Derives the seed for stream `index` from a master seed.
///
/// Scheme (stable across releases; serialized configs depend on it):
///   seed_i = splitmix64_scramble(master + (index + 1) * 0x9E3779B97F4A7C15)
///
/// i.e. the splitmix64 generator seeded at `master`, skipped ahead to
/// position index + 1.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64_scramble(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Lane constants for auxiliary seed streams. Experiment repetition i uses
// mix_seed(master, i) with i < 2^32; lanes live far above that range. The
// values are frozen: canonical splits, experiment streams, and every
// serialized seed lineage depend on them.
inline constexpr std::uint64_t kLaneGauss = 0xA001000000000F01ULL;
inline constexpr std::uint64_t kLaneSplit = 0xA001000000000F02ULL;
inline constexpr std::uint64_t kLaneSynth = 0xA001000000000F03ULL;
inline constexpr std::uint64_t kLaneNoise = 0xA001000000000F04ULL;

/// Deterministic 64-bit-seeded generator.
///
/// Wraps std::mt19937_64 (bit-stable sequence pinned by the standard) and
/// implements the uniform/normal transforms locally so that streams are
/// reproducible across standard libraries and releases.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via the Marsaglia polar method. Generates pairs;
    /// the spare value is cached for the next call.
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
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        has_spare_ = true;
        return u * factor;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sbpm
