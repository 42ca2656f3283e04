#include "core/rng.hpp"

namespace reprank {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::next_unit() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_in(double lo, double hi) noexcept {
  return lo + next_unit() * (hi - lo);
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) noexcept {
  // Multiply-shift; bias is O(bound / 2^64), far below anything observable.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next()) * bound) >> 64);
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t s = mix64(base + kGolden);
  for (std::uint64_t w : words) {
    s = mix64(s ^ mix64(w + kGolden));
  }
  return s;
}

}  // namespace reprank
