#include "hyperrst/rng.hpp"

namespace hyperrst {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replica, StreamRole role) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ replica);
  return mix64(h ^ static_cast<std::uint64_t>(role));
}

double uniform_open(Engine& eng) {
  // 53 random bits, shifted off zero.
  for (;;) {
    const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

}  // namespace hyperrst
