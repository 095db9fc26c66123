#pragma once

#include <cstdint>

namespace qhj::rng {

// splitmix64 finalizer; the basis of the counter-addressed streams below.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stateless, seedable, counter-addressed value: identical across platforms
// and trivially parallel (no sequential state).
inline std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed * 0xD1342543DE82EF95ull + counter * 0x9E3779B97F4A7C15ull);
}

inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(at(seed, counter) >> 11) * 0x1.0p-53;
}

} // namespace qhj::rng
