#include "bloofi/bit_vector.hpp"

#include <algorithm>

#include "bloofi/errors.hpp"

namespace bloofi {

BitVector::BitVector(std::size_t length_bits)
    : length_(length_bits), words_(words_for_bits(length_bits), 0) {}

BitVector BitVector::from_words(std::size_t length_bits, std::vector<std::uint64_t> words) {
  if (words.size() != words_for_bits(length_bits)) {
    throw UsageError("word count " + std::to_string(words.size()) + " does not hold " +
                     std::to_string(length_bits) + " bits");
  }
  BitVector v;
  v.length_ = length_bits;
  v.words_ = std::move(words);
  if (!v.words_.empty() && (v.words_.back() & ~v.last_word_mask()) != 0) {
    throw CorruptionError("padding bits beyond bit " + std::to_string(length_bits) + " are set");
  }
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw UsageError("bit string may only contain '0' and '1'");
    }
  }
  return v;
}

void BitVector::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::size_t BitVector::count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitVector::all() const {
  if (words_.empty()) return true;
  for (std::size_t i = 0; i + 1 < words_.size(); ++i) {
    if (words_[i] != ~std::uint64_t{0}) return false;
  }
  return words_.back() == last_word_mask();
}

bool BitVector::is_subset_of(const BitVector& other) const {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string BitVector::to_string() const {
  std::string out(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

void BitVector::require_same_length(const BitVector& other) const {
  if (length_ != other.length_) {
    throw UsageError("bit vector length mismatch: " + std::to_string(length_) + " vs " +
                     std::to_string(other.length_));
  }
}

std::uint64_t BitVector::last_word_mask() const {
  const std::size_t tail = length_ % kWordBits;
  return tail == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
}

void union_into(BitVector& target, const BitVector& source) { target |= source; }

namespace {

template <typename Op>
std::size_t popcount_combined(const BitVector& a, const BitVector& b, Op op) {
  if (a.size() != b.size()) throw UsageError("bit vector length mismatch");
  auto wa = a.words();
  auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(op(wa[i], wb[i])));
  }
  return total;
}

}  // namespace

std::size_t popcount_and(const BitVector& a, const BitVector& b) {
  return popcount_combined(a, b, [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

std::size_t popcount_or(const BitVector& a, const BitVector& b) {
  return popcount_combined(a, b, [](std::uint64_t x, std::uint64_t y) { return x | y; });
}

std::size_t popcount_xor(const BitVector& a, const BitVector& b) {
  return popcount_combined(a, b, [](std::uint64_t x, std::uint64_t y) { return x ^ y; });
}

}  // namespace bloofi
