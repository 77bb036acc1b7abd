#pragma once

#include <cstdint>
#include <random>

namespace repsim {

// splitmix64 finalizer — spreads a seed/tag combination across 64 bits.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream tags: each simulation concern draws from its own substream of the
// root seed, so changing one knob never perturbs unrelated draws.
namespace rng_tag {
inline constexpr std::uint64_t placement = 1;
inline constexpr std::uint64_t mobility = 2;
inline constexpr std::uint64_t dropper = 3;
inline constexpr std::uint64_t channel = 4;
} // namespace rng_tag

inline std::mt19937_64 make_stream(std::uint64_t root, std::uint64_t tag,
                                   std::uint64_t sub = 0) {
    return std::mt19937_64(splitmix64(splitmix64(root ^ splitmix64(tag)) ^ sub));
}

} // namespace repsim
