#pragma once

#include <cstdint>
#include <random>

namespace vanetsim {

// Independent random streams derived from one root seed. Each stream is
// consumed by exactly one subsystem so that, e.g., changing the routing
// protocol never shifts vehicle trajectories or the packet workload.
enum class Stream : std::uint64_t { Mobility = 1, Arrivals = 2, Destinations = 3 };

inline constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t root_seed, Stream stream) {
  const auto tag = static_cast<std::uint64_t>(stream);
  return std::mt19937_64(splitmix64(splitmix64(root_seed) ^ splitmix64(tag * 0x5851f42d4c957f2dULL)));
}

}  // namespace vanetsim
