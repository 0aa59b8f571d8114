#pragma once

#include <cstdint>

// Counter-based randomness: every draw is a pure function of
// (master_seed, replica, stream, k, y).  No generator state exists, so any
// edge weight can be replayed bit-exactly from its coordinates alone and
// coupled experiments (truncations, overlays) automatically consume the same
// underlying uniforms.

namespace fpp::rng {

// Disjoint stream tags keep independent uses of one master seed apart.
inline constexpr std::uint64_t stream_edge  = 0x9e3779b97f4a7c15ull;
inline constexpr std::uint64_t stream_shear = 0xc2b2ae3d27d4eb4full;
inline constexpr std::uint64_t stream_site  = 0x165667b19e3779f9ull;
inline constexpr std::uint64_t stream_perm  = 0xd6e8feb86659fd93ull;
inline constexpr std::uint64_t stream_misc  = 0xa0761d6478bd642full;

// Finalizer of the splitmix64 generator; bijective on 64-bit words with
// strong avalanche behaviour.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t replica,
                                     std::uint64_t stream, std::int64_t k,
                                     std::int64_t y) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ull);
    h = mix64(h ^ (replica + 0x6a09e667f3bcc909ull));
    h = mix64(h ^ stream);
    h = mix64(h ^ static_cast<std::uint64_t>(k));
    h = mix64(h ^ static_cast<std::uint64_t>(y));
    return h;
}

// Map to the open interval (0,1): (i + 1/2) * 2^-53 for i in [0, 2^53).
// Never returns 0 or 1, so generalized inverse CDFs are always safe.
constexpr double to_unit(std::uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform01(std::uint64_t seed, std::uint64_t replica,
                        std::uint64_t stream, std::int64_t k, std::int64_t y) {
    return to_unit(counter_hash(seed, replica, stream, k, y));
}

}  // namespace fpp::rng
