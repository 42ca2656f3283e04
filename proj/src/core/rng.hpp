#pragma once

#include <cstdint>
#include <initializer_list>

namespace reprank {

// SplitMix64 (Steele/Lea/Vigna). Streams seeded through derive_seed are
// statistically independent, so per-user and per-realization generation can
// run in any order, or in parallel, and still reproduce bit-identically.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_unit() noexcept;

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) noexcept;

  /// Uniform integer in [0, bound); bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

/// SplitMix64 finalizer, usable as a standalone 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Collapses (base, words...) into a stream seed. Order-sensitive.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> words) noexcept;

// Stream tags so distinct draws never share a stream.
inline constexpr std::uint64_t kStreamQuality = 1;
inline constexpr std::uint64_t kStreamNoise = 2;
inline constexpr std::uint64_t kStreamRatings = 3;
inline constexpr std::uint64_t kStreamRealization = 10;
inline constexpr std::uint64_t kStreamTieBreak = 11;

}  // namespace reprank
