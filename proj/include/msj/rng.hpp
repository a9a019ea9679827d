#pragma once

#include <cmath>
#include <cstdint>

namespace msj {

// Counter-based generator: every draw is a pure function of
// (seed, role, index, sub-index), built from the SplitMix64 finalizer.
// Streams are therefore order-independent and identical on every platform.

enum class StreamRole : std::uint64_t {
    InterArrival = 1,
    Service = 2,
    JobType = 3,
    Resume = 4,
};

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t counter_bits(std::uint64_t seed, StreamRole role, std::uint64_t index,
                                     std::uint64_t sub = 0) {
    constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key = splitmix64_mix(seed + golden);
    key = splitmix64_mix(key ^ (static_cast<std::uint64_t>(role) * golden));
    key = splitmix64_mix(key + sub * golden);
    return splitmix64_mix(key + (index + 1) * golden);
}

/// Uniform on the open interval (0, 1), 53-bit resolution.
constexpr double counter_uniform(std::uint64_t seed, StreamRole role, std::uint64_t index,
                                 std::uint64_t sub = 0) {
    const std::uint64_t bits = counter_bits(seed, role, index, sub) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Unit-rate exponential, strictly positive.
inline double counter_exponential(std::uint64_t seed, StreamRole role, std::uint64_t index,
                                  std::uint64_t sub = 0) {
    return -std::log(counter_uniform(seed, role, index, sub));
}

}  // namespace msj
