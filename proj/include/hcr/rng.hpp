#pragma once

#include <cstdint>
#include <string_view>

#include "hcr/common.hpp"

namespace hcr {

/// SplitMix64 generator with a fixed bounded-integer reduction; draw
/// sequences are identical on every platform.
class SplitMix64 {
 public:
  static constexpr std::string_view kName = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  /// Exact Bernoulli(p) for rational p in [0, 1].
  bool bernoulli(const Rational& p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    return below(static_cast<std::uint64_t>(p.denominator())) < static_cast<std::uint64_t>(p.numerator());
  }

 private:
  std::uint64_t state_;
};

/// Independent stream for (seed, index): one SplitMix64 step over a mixed key.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (index * 0xD1B54A32D192ED03ULL));
  mix.next();
  return mix.next();
}

}  // namespace hcr
