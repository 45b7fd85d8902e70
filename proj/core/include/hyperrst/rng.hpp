#pragma once

#include <cstdint>
#include <random>

namespace hyperrst {

/// What a random stream is used for. Streams with distinct roles never share
/// state, so adding draws to one role leaves every other role unchanged.
enum class StreamRole : std::uint64_t {
  kCloud = 1,
  kHalfCloud = 2,
  kProbe = 3,      // probe directions / probe points inside experiments
  kBootstrap = 4,
  kIntegration = 5,
};

/// 64-bit finalizer of SplitMix64.
std::uint64_t mix64(std::uint64_t x);

/// Seed for the stream keyed by (seed, replica, role).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replica, StreamRole role);

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::uint64_t replica, StreamRole role) {
  return Engine(stream_seed(seed, replica, role));
}

/// Uniform double in the open interval (0, 1).
double uniform_open(Engine& eng);

}  // namespace hyperrst
