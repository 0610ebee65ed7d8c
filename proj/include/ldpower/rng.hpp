#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace ldpower {

// SplitMix64: cheap to seed, so every Monte Carlo run can own an independent stream.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of the stream for (seed, index); independent of evaluation order.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed + 0x632be59bd9b4e019ULL) ^ (index * 0x9e3779b97f4a7c15ULL + 1));
}

// Uniform double in [0, 1) from the top 53 bits.
template <class Engine>
double uniform01(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Engine>
double sample_beta(Engine& rng, double alpha, double beta) {
    if (alpha == 1.0 && beta == 1.0) return uniform01(rng);
    const double x = std::gamma_distribution<double>(alpha)(rng);
    const double y = std::gamma_distribution<double>(beta)(rng);
    return x / (x + y);
}

// 64-bit FNV-1a, used to derive per-item seeds from string ids.
inline std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace ldpower
