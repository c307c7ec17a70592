#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "bloofi/membership_index.hpp"

namespace bloofi {

/// Linear scan over every filter. Ground truth for the other indexes; update
/// replaces the stored filter outright.
class NaiveIndex final : public MembershipIndex {
 public:
  explicit NaiveIndex(FamilyPtr family);

  std::string_view name() const override { return "naive"; }
  const FamilyPtr& family() const override { return family_; }

  void insert(FilterId id, const BloomFilter& filter) override;
  void remove(FilterId id) override;
  void update(FilterId id, const BloomFilter& filter) override;
  std::vector<FilterId> find_matches(std::uint64_t element) override;
  std::vector<FilterId> find_matches_at(std::span<const std::size_t> positions);

  bool contains(FilterId id) const override { return position_.contains(id); }
  std::size_t size() const override { return entries_.size(); }
  std::size_t storage_bytes() const override;
  std::uint64_t access_cost() const override { return access_cost_; }
  void reset_cost() override { access_cost_ = 0; }

  /// Entries in insertion order.
  const std::vector<std::pair<FilterId, BitVector>>& entries() const { return entries_; }
  const BitVector* filter(FilterId id) const;

 private:
  void require_compatible(const BloomFilter& filter) const;

  FamilyPtr family_;
  std::vector<std::pair<FilterId, BitVector>> entries_;
  std::unordered_map<FilterId, std::size_t> position_;
  std::uint64_t access_cost_ = 0;
  std::vector<std::size_t> scratch_positions_;
};

}  // namespace bloofi
