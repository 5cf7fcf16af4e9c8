#ifndef SEMLINK_RNG_HPP
#define SEMLINK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <utility>

// Counter-based random number generation. Every draw is a pure function of
// (seed, counter), so streams can be split, replayed, and generated out of
// order without shared state. The mixing function is the SplitMix64
// finalizer applied to seed + counter * golden-ratio increment.

namespace semlink {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// i-th raw 64-bit word of the stream identified by `seed`.
constexpr std::uint64_t rng_word(std::uint64_t seed, std::uint64_t counter) noexcept {
    return mix64(seed + (counter + 1) * kGoldenGamma);
}

// Uniform double in (0, 1]; never 0 so it is safe inside log().
inline double rng_open_unit(std::uint64_t seed, std::uint64_t counter) noexcept {
    return static_cast<double>((rng_word(seed, counter) >> 11) + 1) * 0x1.0p-53;
}

// Uniform double in [0, 1).
inline double rng_unit(std::uint64_t seed, std::uint64_t counter) noexcept {
    return static_cast<double>(rng_word(seed, counter) >> 11) * 0x1.0p-53;
}

// Pair of independent standard normal values via the Box-Muller transform.
// Consumes counters 2i and 2i+1 of the stream.
inline std::pair<double, double> rng_normal_pair(std::uint64_t seed, std::uint64_t i) noexcept {
    const double u1 = rng_open_unit(seed, 2 * i);
    const double u2 = rng_unit(seed, 2 * i + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

// Derives an independent sub-stream seed; `tag` distinguishes purposes.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) noexcept {
    return mix64(seed ^ mix64(tag + 1));
}

}  // namespace semlink

#endif
