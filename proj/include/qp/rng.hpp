#pragma once

#include <cstdint>
#include <limits>

namespace qp {

/// SplitMix64 finalizer. Bijective on 64-bit words; the basis of all randomness
/// in this project so that every draw is a pure function of (key, counter).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

/// Child seed for stream `index` under `seed`. Order-independent: deriving
/// stream 7 does not require generating streams 0..6 first.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed + kGoldenGamma * (index + 1));
}

/// Counter-based generator: output i is mix64(key + i*gamma). Streams with
/// different keys are independent; a stream's draws do not depend on how many
/// other streams were consumed before it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next() noexcept { return mix64(key_ + kGoldenGamma * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double next_symmetric() noexcept { return 2.0 * next_unit() - 1.0; }

  bool next_bool() noexcept { return (next() & 1u) != 0; }

  /// Uniform integer in [0, bound). Rejection sampling keeps the draw exactly
  /// uniform and identical across platforms.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t zone = max - max % bound;  // multiple of bound
    std::uint64_t x = next();
    while (x >= zone) x = next();
    return x % bound;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qp
