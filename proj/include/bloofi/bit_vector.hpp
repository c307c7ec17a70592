#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bloofi {

inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for_bits(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Fixed-length bit array stored in 64-bit words, bit i living in word i/64 at
/// position i%64. Padding bits past size() are kept zero by every operation.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length_bits);

  /// Adopts raw words. Throws CorruptionError if any padding bit is set and
  /// UsageError if the word count does not match the length.
  static BitVector from_words(std::size_t length_bits, std::vector<std::uint64_t> words);

  /// Parses a string of '0'/'1' where the leftmost character is bit 0.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const { return length_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const std::uint64_t> words() const { return words_; }

  bool test(std::size_t pos) const {
    return (words_[pos / kWordBits] >> (pos % kWordBits)) & 1U;
  }
  void set(std::size_t pos) { words_[pos / kWordBits] |= std::uint64_t{1} << (pos % kWordBits); }
  void reset(std::size_t pos) { words_[pos / kWordBits] &= ~(std::uint64_t{1} << (pos % kWordBits)); }
  void clear();

  std::size_t count() const;
  bool none() const;
  bool all() const;

  /// True when every bit set here is also set in `other`.
  bool is_subset_of(const BitVector& other) const;

  BitVector& operator|=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  BitVector& operator^=(const BitVector& other);

  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool operator==(const BitVector& other) const = default;

  /// Calls fn(pos) for every set bit in increasing order.
  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

  std::string to_string() const;

 private:
  void require_same_length(const BitVector& other) const;
  std::uint64_t last_word_mask() const;

  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Sets target to target | source.
void union_into(BitVector& target, const BitVector& source);

std::size_t popcount_and(const BitVector& a, const BitVector& b);
std::size_t popcount_or(const BitVector& a, const BitVector& b);
std::size_t popcount_xor(const BitVector& a, const BitVector& b);

}  // namespace bloofi
