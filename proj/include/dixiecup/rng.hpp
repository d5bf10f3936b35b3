#pragma once

#include <cstdint>

namespace dixiecup {

// Counter-based stream generator: output i of stream (seed, stream) is a
// fixed mixing function of (key(seed, stream), i). Distinct streams use
// distinct 128-bit keys, so any number of streams can be drawn independently
// and reproducibly regardless of scheduling.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) {
    k1_ = mix(seed ^ 0x243F6A8885A308D3ULL);
    k2_ = mix(mix(stream ^ 0x452821E638D01377ULL) + k1_);
  }

  std::uint64_t next_u64() {
    std::uint64_t z = ctr_++ + k1_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= k2_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t k1_ = 0;
  std::uint64_t k2_ = 0;
  std::uint64_t ctr_ = 0;
};

}  // namespace dixiecup
