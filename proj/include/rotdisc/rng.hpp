#pragma once

#include <cstdint>

namespace rotdisc {

// Counter-based generator: word i of a stream is a pure function of
// (seed, i), so any sample can be computed independently of the others.
// This is what makes threaded Monte-Carlo bit-reproducible.

inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline uint64_t rng_word(uint64_t seed, uint64_t index) {
    return mix64(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

// uniform in [0, 1)
inline double rng_uniform(uint64_t seed, uint64_t index) {
    return (rng_word(seed, index) >> 11) * 0x1.0p-53;
}

} // namespace rotdisc
