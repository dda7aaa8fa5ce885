#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hcr {

/// Fixed-size bit vector used for per-layer firing patterns and incoming
/// weight masks. The potential of a neuron is the popcount of
/// (incoming mask & previous-layer firing).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  std::size_t count() const;
  bool any() const;
  /// popcount(*this & other); sizes must match.
  std::size_t intersect_count(const BitVector& other) const;
  /// Clears every bit that is set in mask.
  void clear_bits(const BitVector& mask);

  std::vector<std::size_t> set_bits() const;

  bool operator==(const BitVector&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace hcr
