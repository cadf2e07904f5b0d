#pragma once

#include <cstdint>

namespace hetn2v {

// Counter-based generator (SplitMix64). for_stream() keys an independent
// stream from up to three 64-bit values, so every (seed, start node,
// replicate) work item draws from its own sequence no matter which thread
// runs it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ull);
    h = mix(h ^ (a + 0xbf58476d1ce4e5b9ull));
    h = mix(h ^ (b + 0x94d049bb133111ebull));
    return SplitMix64(h);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound > 0. Multiply-shift reduction.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace hetn2v
