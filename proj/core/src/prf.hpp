#pragma once

#include <cstdint>

namespace sandpile::detail {

// SplitMix64 finaliser; used as a counter-mode pseudo-random function.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Top 53 bits as a double in [0, 1).
inline double unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Multiply-shift reduction to [0, bound).
inline std::uint64_t bounded(std::uint64_t h, std::uint64_t bound) {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::uint64_t>((static_cast<u128>(h) * bound) >> 64);
}

}  // namespace sandpile::detail
