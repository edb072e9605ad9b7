#pragma once

// Counter-based splittable random streams.  Every stream is keyed by a
// 64-bit seed; substreams are derived by mixing, never by sharing state,
// so replicas and coordinates can be sampled independently and in any
// order while staying bit-reproducible.

#include <cstdint>

namespace clo {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace detail

/// SplitMix64 sequence generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent substream key, e.g. per coordinate or replica.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  return detail::mix64(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

}  // namespace clo
