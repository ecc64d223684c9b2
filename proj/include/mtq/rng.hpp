#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mtq {

/// Deterministic random source. Same seed, same platform-independent draw
/// sequence: mt19937_64 is fully specified by the standard and the unit
/// draw below avoids std::uniform_real_distribution, whose output is
/// implementation-defined.
///
/// Named streams are derived from a seed rather than drawn from a parent
/// engine, so components consume independent sequences regardless of the
/// order in which they run.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Collapse a (seed, tag) pair into a child seed. FNV-1a over the tag,
  /// xor with the parent seed, then a splitmix64 finalizer to spread bits.
  static std::uint64_t mix(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return finalize(seed ^ h);
  }

  static std::uint64_t mix(std::uint64_t seed, std::string_view tag,
                           std::uint64_t index) {
    return finalize(mix(seed, tag) ^ (index * 0x9e3779b97f4a7c15ull));
  }

  RandomStream derive(std::string_view tag) const {
    return RandomStream(mix(seed_, tag));
  }

  RandomStream derive(std::string_view tag, std::uint64_t index) const {
    return RandomStream(mix(seed_, tag, index));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  /// Uniform draw in [0, n). Rejection sampling keeps it unbiased.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  static std::uint64_t finalize(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace mtq
