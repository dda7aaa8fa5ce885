#include "hcr/bitvector.hpp"

#include <bit>
#include <cassert>

namespace hcr {

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitVector::any() const {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

std::size_t BitVector::intersect_count(const BitVector& other) const {
  assert(size_ == other.size_);
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return n;
}

void BitVector::clear_bits(const BitVector& mask) {
  assert(size_ == mask.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~mask.words_[i];
}

std::vector<std::size_t> BitVector::set_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto word = words_[w];
    while (word != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(word));
      out.push_back(w * 64 + bit);
      word &= word - 1;
    }
  }
  return out;
}

}  // namespace hcr
