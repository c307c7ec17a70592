#pragma once

#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bloofi/bloom_filter.hpp"
#include "bloofi/errors.hpp"
#include "bloofi/membership_index.hpp"

namespace bloofi {

/// Bit-sliced index. Filters are packed W at a time into slice arrays of m
/// words: bit j of word i in an array is bit i of the filter in slot j. A
/// query ANDs the k words at the hashed positions of each array, so one word
/// operation tests W filters.
///
/// Slots are numbered globally (array * W + bit). `occupancy` (one word per
/// array) marks live slots; freed slots are reused lowest first. An array
/// whose only filter is deleted is dropped and higher slots shift down by W.
template <std::unsigned_integral Word>
class BasicFlatBloofi final : public MembershipIndex {
 public:
  static constexpr std::size_t kSlotsPerArray = std::numeric_limits<Word>::digits;
  static constexpr FilterId kNoFilter = std::numeric_limits<FilterId>::max();

  explicit BasicFlatBloofi(FamilyPtr family) : family_(std::move(family)) {
    if (!family_) throw ParameterError("flat index needs a hash family");
  }

  std::string_view name() const override { return "flat"; }
  const FamilyPtr& family() const override { return family_; }

  void insert(FilterId id, const BloomFilter& filter) override {
    require_compatible(filter);
    if (slot_of_.contains(id)) throw UsageError("filter id " + std::to_string(id) + " already indexed");
    const std::size_t slot = claim_slot();
    slot_of_.emplace(id, slot);
    id_at_[slot] = id;
    ++access_cost_;
    or_into_slot(slot, filter.bits());
  }

  void remove(FilterId id) override {
    auto it = slot_of_.find(id);
    if (it == slot_of_.end()) throw UsageError("filter id " + std::to_string(id) + " is not indexed");
    const std::size_t slot = it->second;
    slot_of_.erase(it);
    ++access_cost_;

    const std::size_t array = slot / kSlotsPerArray;
    const Word bit = Word{1} << (slot % kSlotsPerArray);
    occupancy_[array] = static_cast<Word>(occupancy_[array] & ~bit);
    id_at_[slot] = kNoFilter;

    if (occupancy_[array] == 0) {
      drop_array(array);
      return;
    }
    const Word keep = static_cast<Word>(~bit);
    for (auto& word : arrays_[array]) word = static_cast<Word>(word & keep);
  }

  /// ORs the filter's bits into the stored column. Bits already stored are
  /// never cleared.
  void update(FilterId id, const BloomFilter& filter) override {
    require_compatible(filter);
    auto it = slot_of_.find(id);
    if (it == slot_of_.end()) throw UsageError("filter id " + std::to_string(id) + " is not indexed");
    ++access_cost_;
    or_into_slot(it->second, filter.bits());
  }

  std::vector<FilterId> find_matches(std::uint64_t element) override {
    family_->positions(element, scratch_positions_);
    return find_matches_at(scratch_positions_);
  }

  std::vector<FilterId> find_matches_at(std::span<const std::size_t> positions) {
    std::vector<FilterId> out;
    access_cost_ += slot_of_.size();
    for (std::size_t a = 0; a < arrays_.size(); ++a) {
      Word acc = occupancy_[a];
      const auto& words = arrays_[a];
      for (auto p : positions) {
        if (acc == 0) break;
        acc = static_cast<Word>(acc & words[p]);
        ++words_read_;
      }
      while (acc != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(acc));
        out.push_back(id_at_[a * kSlotsPerArray + bit]);
        acc = static_cast<Word>(acc & (acc - 1));
      }
    }
    return out;
  }

  bool contains(FilterId id) const override { return slot_of_.contains(id); }
  std::size_t size() const override { return slot_of_.size(); }

  /// Filter bytes times the slot capacity (live filters rounded up to W).
  std::size_t storage_bytes() const override {
    return words_for_bits(family_->m()) * sizeof(std::uint64_t) * capacity();
  }

  std::uint64_t access_cost() const override { return access_cost_; }
  void reset_cost() override { access_cost_ = 0; }

  /// Slice words read by queries since the last reset_words_read().
  std::uint64_t words_read() const { return words_read_; }
  void reset_words_read() { words_read_ = 0; }

  std::size_t array_count() const { return arrays_.size(); }
  std::size_t capacity() const { return arrays_.size() * kSlotsPerArray; }
  std::size_t slice_word_count() const { return arrays_.size() * family_->m(); }

  std::optional<std::size_t> slot_of(FilterId id) const {
    auto it = slot_of_.find(id);
    if (it == slot_of_.end()) return std::nullopt;
    return it->second;
  }

  /// Reassembles the filter stored in a slot (occupied or not).
  BitVector column(std::size_t slot) const {
    BitVector bits(family_->m());
    const auto& words = arrays_[slot / kSlotsPerArray];
    const Word bit = Word{1} << (slot % kSlotsPerArray);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i] & bit) bits.set(i);
    }
    return bits;
  }

  /// Checks occupancy/id-map agreement, live-count bookkeeping and that
  /// free slots hold all-zero columns.
  std::optional<std::string> validate() const {
    if (occupancy_.size() != arrays_.size() || id_at_.size() != capacity()) {
      return "array, occupancy and slot table sizes disagree";
    }
    std::size_t live = 0;
    for (std::size_t a = 0; a < arrays_.size(); ++a) {
      if (arrays_[a].size() != family_->m()) return "slice array has the wrong length";
      live += static_cast<std::size_t>(std::popcount(occupancy_[a]));
      Word stray = 0;
      for (auto w : arrays_[a]) stray = static_cast<Word>(stray | (w & ~occupancy_[a]));
      if (stray != 0) return "free slot in array " + std::to_string(a) + " has set bits";
    }
    if (live != slot_of_.size()) return "occupancy popcount differs from live filter count";
    for (const auto& [id, slot] : slot_of_) {
      if (slot >= capacity() || id_at_[slot] != id) return "slot table is not inverse of id map";
      if (((occupancy_[slot / kSlotsPerArray] >> (slot % kSlotsPerArray)) & 1U) == 0) {
        return "mapped slot is not marked occupied";
      }
    }
    for (std::size_t s = 0; s < id_at_.size(); ++s) {
      const bool occupied = (occupancy_[s / kSlotsPerArray] >> (s % kSlotsPerArray)) & 1U;
      if (occupied != (id_at_[s] != kNoFilter)) return "slot table disagrees with occupancy";
    }
    return std::nullopt;
  }

 private:
  void require_compatible(const BloomFilter& filter) const {
    if (!filter.compatible_with(*family_)) {
      throw UsageError("filter uses a different hash family than the index");
    }
  }

  std::size_t claim_slot() {
    constexpr Word kFull = std::numeric_limits<Word>::max();
    for (std::size_t a = 0; a < occupancy_.size(); ++a) {
      if (occupancy_[a] != kFull) {
        const auto bit = static_cast<std::size_t>(std::countr_one(occupancy_[a]));
        occupancy_[a] = static_cast<Word>(occupancy_[a] | (Word{1} << bit));
        return a * kSlotsPerArray + bit;
      }
    }
    arrays_.emplace_back(family_->m(), Word{0});
    occupancy_.push_back(Word{1});
    id_at_.resize(capacity(), kNoFilter);
    return (arrays_.size() - 1) * kSlotsPerArray;
  }

  void or_into_slot(std::size_t slot, const BitVector& bits) {
    auto& words = arrays_[slot / kSlotsPerArray];
    const Word bit = Word{1} << (slot % kSlotsPerArray);
    bits.for_each_set([&](std::size_t i) { words[i] = static_cast<Word>(words[i] | bit); });
  }

  void drop_array(std::size_t array) {
    arrays_.erase(arrays_.begin() + static_cast<std::ptrdiff_t>(array));
    occupancy_.erase(occupancy_.begin() + static_cast<std::ptrdiff_t>(array));
    const auto first = id_at_.begin() + static_cast<std::ptrdiff_t>(array * kSlotsPerArray);
    id_at_.erase(first, first + static_cast<std::ptrdiff_t>(kSlotsPerArray));
    const std::size_t limit = (array + 1) * kSlotsPerArray;
    for (auto& [id, slot] : slot_of_) {
      if (slot >= limit) slot -= kSlotsPerArray;
    }
  }

  FamilyPtr family_;
  std::vector<std::vector<Word>> arrays_;
  std::vector<Word> occupancy_;
  std::vector<FilterId> id_at_;
  std::unordered_map<FilterId, std::size_t> slot_of_;
  std::uint64_t access_cost_ = 0;
  std::uint64_t words_read_ = 0;
  std::vector<std::size_t> scratch_positions_;
};

using FlatBloofi = BasicFlatBloofi<std::uint64_t>;

}  // namespace bloofi
