#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "bloofi/bit_vector.hpp"
#include "bloofi/hash_family.hpp"

namespace bloofi {

using FamilyPtr = std::shared_ptr<const HashFamily>;

/// Bloom filter over unsigned 64-bit elements. Filters that share a family
/// (same m, same multipliers) can be combined and indexed together.
class BloomFilter {
 public:
  explicit BloomFilter(FamilyPtr family);
  /// Wraps existing bits; throws UsageError if bits.size() != family->m().
  BloomFilter(FamilyPtr family, BitVector bits);

  void add(std::uint64_t element);
  void add_all(std::span<const std::uint64_t> elements);
  bool query(std::uint64_t element) const;

  const BitVector& bits() const { return bits_; }
  const FamilyPtr& family() const { return family_; }
  std::size_t size_bits() const { return bits_.size(); }

  /// Same family by identity or by value.
  bool compatible_with(const HashFamily& family) const;

  bool operator==(const BloomFilter& other) const {
    return bits_ == other.bits_ && compatible_with(*other.family_);
  }

 private:
  FamilyPtr family_;
  BitVector bits_;
};

/// True when every position in `positions` is set in `bits`.
inline bool matches_positions(const BitVector& bits, std::span<const std::size_t> positions) {
  for (auto p : positions) {
    if (!bits.test(p)) return false;
  }
  return true;
}

}  // namespace bloofi
