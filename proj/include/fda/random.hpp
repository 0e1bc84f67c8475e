#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fda {

/// 64-bit finalizer from SplitMix64; used to derive child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over bytes. Stable across platforms, used for path and tag hashing.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seeded, splittable random stream.
///
/// Draws come from a 64-bit Mersenne Twister whose output sequence is fixed
/// by the C++ standard. Real and integer draws are derived from raw 64-bit
/// words here rather than through <random> distributions, whose algorithms
/// are implementation-defined. Children returned by split() depend only on
/// the parent seed and the tag, never on how many draws the parent has made.
class RandomState {
public:
  explicit RandomState(std::uint64_t seed = 0) : seed_(seed), engine_(mix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  RandomState split(std::string_view tag) const { return RandomState(mix64(seed_ ^ fnv1a64(tag))); }
  RandomState split(std::uint64_t index) const {
    return RandomState(mix64(seed_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [low, high); returns low when the range is empty.
  double uniform(double low, double high) { return low + (high - low) * uniform01(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [low, high], inclusive.
  std::int64_t integer(std::int64_t low, std::int64_t high) {
    return low + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(high - low) + 1));
  }

  bool bernoulli(double p) { return uniform01() < p; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

inline std::uint64_t RandomState::below(std::uint64_t bound) {
  // Rejection on the top of the range keeps the result unbiased.
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace fda
