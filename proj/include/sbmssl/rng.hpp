#pragma once

#include <cstdint>
#include <random>

namespace sbmssl {

// Uniform double in [0, 1) from the top 53 bits of the generator output.
// We do not use std::uniform_real_distribution because its output is not
// pinned down by the standard; this keeps sampled graphs bit-identical
// across compilers for a fixed seed.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1], safe as a log() argument.
inline double uniform01_pos(std::mt19937_64& gen) {
    return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

// SplitMix64 finalizer, used to derive independent child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(seed ^ splitmix64(tag));
}

}  // namespace sbmssl
