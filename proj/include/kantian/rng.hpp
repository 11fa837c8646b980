#pragma once

#include <cstdint>

#include "kantian/game.hpp"

namespace kantian {

// SplitMix64 (Steele/Lea/Flood; public-domain reference constants).
// Chosen over std::mt19937 + <random> distributions because the standard
// distributions are not bit-reproducible across library implementations;
// protocol runs must replay exactly from a seed on every platform.
//
//   state += 0x9e3779b97f4a7c15
//   z = state; z = (z ^ z>>30) * 0xbf58476d1ce4e5b9
//   z = (z ^ z>>27) * 0x94d049bb133111eb
//   return z ^ z>>31
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  int bit() { return static_cast<int>(next() >> 63); }

  // Unbiased draw from {0, ..., n-1} by rejecting the partial final block
  // of the 2^64 range (draws below 2^64 mod n are rerolled).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw domain_error("uniform draw needs n >= 1");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t r = next();
    while (r < threshold) r = next();
    return r % n;
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace kantian
