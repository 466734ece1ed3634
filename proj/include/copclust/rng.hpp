#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace copclust {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives a child seed from a root seed and a path of stream tags, e.g.
/// derive_seed(root, {tag::simulate, replicate, population}). Every random
/// draw in the library flows from a seed obtained this way.
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path);

/// Uniform on the open interval (0,1), 53-bit resolution.
inline double uniform_open(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

namespace tag {
inline constexpr std::uint64_t sample = 0x73616d70;
inline constexpr std::uint64_t simulate = 0x73696d75;
inline constexpr std::uint64_t permutation = 0x7065726d;
inline constexpr std::uint64_t tuning = 0x74756e65;
}  // namespace tag

}  // namespace copclust
