#ifndef BALLOTGEO_RNG_HPP
#define BALLOTGEO_RNG_HPP

#include <cstdint>
#include <random>

namespace ballotgeo {

/// splitmix64 step; used to derive independent, reproducible streams from
/// (seed, stream index) pairs.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(mix64(mix64(seed) ^ (stream + 1)));
}

/// Uniform double in [0,1) built from the top 53 bits; avoids the
/// implementation-defined std distributions so seeded runs are portable.
inline double rand_u01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), unbiased via rejection.
inline std::uint64_t rand_below(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = gen();
    } while (v >= limit);
    return v % n;
}

} // namespace ballotgeo

#endif
