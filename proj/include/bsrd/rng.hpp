#pragma once

#include <bit>
#include <cstdint>

namespace bsrd {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 52 random mantissa bits mapped onto [0, 1) exactly.
inline double bits_to_unit(std::uint64_t z) noexcept {
  return std::bit_cast<double>(0x3ff0000000000000ULL | (z >> 12)) - 1.0;
}

/// Word `index` (0-based) of the stream keyed by `key`.
constexpr std::uint64_t stream_word(std::uint64_t key, std::uint64_t index) noexcept {
  return mix64(key + (index + 1) * kGoldenGamma);
}

inline double stream_uniform(std::uint64_t key, std::uint64_t index) noexcept {
  return bits_to_unit(stream_word(key, index));
}

/// Key for replicate `index` of a run seeded with `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master ^ 0x243f6a8885a308d3ULL) + mix64(index + 0x13198a2e03707344ULL));
}

/// Counter-based generator: draw k of a stream is a pure function of
/// (key, k), so streams can be split or batch-filled without changing values.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  std::uint64_t next_u64() noexcept { return stream_word(key_, counter_++); }
  double next_uniform() noexcept { return bits_to_unit(next_u64()); }
  bool bernoulli(double p) noexcept { return next_uniform() < p; }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace bsrd
