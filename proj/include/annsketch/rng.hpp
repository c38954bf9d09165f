#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace annsketch {

// All randomness is drawn from raw mt19937_64 words so draws are identical on
// every standard library; std::*_distribution is implementation-defined.
inline constexpr std::string_view kGeneratorName = "mt19937_64+splitmix64-v1";

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for trial `counter` of stream `stream` derived from one user seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t counter) noexcept {
    return splitmix64(splitmix64(seed ^ splitmix64(stream)) + counter);
}

namespace stream {
inline constexpr std::uint64_t code = 1;
inline constexpr std::uint64_t selector = 2;
inline constexpr std::uint64_t marked = 3;
inline constexpr std::uint64_t sampling = 4;
} // namespace stream

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
        : engine_(derive_seed(seed, stream, counter)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace annsketch
