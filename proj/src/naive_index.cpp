#include "bloofi/naive_index.hpp"

#include <string>

#include "bloofi/errors.hpp"

namespace bloofi {

NaiveIndex::NaiveIndex(FamilyPtr family) : family_(std::move(family)) {
  if (!family_) throw ParameterError("naive index needs a hash family");
}

void NaiveIndex::require_compatible(const BloomFilter& filter) const {
  if (!filter.compatible_with(*family_)) {
    throw UsageError("filter uses a different hash family than the index");
  }
}

void NaiveIndex::insert(FilterId id, const BloomFilter& filter) {
  require_compatible(filter);
  if (position_.contains(id)) throw UsageError("filter id " + std::to_string(id) + " already indexed");
  position_.emplace(id, entries_.size());
  entries_.emplace_back(id, filter.bits());
  ++access_cost_;
}

void NaiveIndex::remove(FilterId id) {
  auto it = position_.find(id);
  if (it == position_.end()) throw UsageError("filter id " + std::to_string(id) + " is not indexed");
  const std::size_t pos = it->second;
  position_.erase(it);
  entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(pos));
  for (std::size_t i = pos; i < entries_.size(); ++i) position_[entries_[i].first] = i;
  ++access_cost_;
}

void NaiveIndex::update(FilterId id, const BloomFilter& filter) {
  require_compatible(filter);
  auto it = position_.find(id);
  if (it == position_.end()) throw UsageError("filter id " + std::to_string(id) + " is not indexed");
  entries_[it->second].second = filter.bits();
  ++access_cost_;
}

std::vector<FilterId> NaiveIndex::find_matches(std::uint64_t element) {
  family_->positions(element, scratch_positions_);
  return find_matches_at(scratch_positions_);
}

std::vector<FilterId> NaiveIndex::find_matches_at(std::span<const std::size_t> positions) {
  std::vector<FilterId> out;
  access_cost_ += entries_.size();
  for (const auto& [id, bits] : entries_) {
    if (matches_positions(bits, positions)) out.push_back(id);
  }
  return out;
}

std::size_t NaiveIndex::storage_bytes() const {
  return entries_.size() * words_for_bits(family_->m()) * sizeof(std::uint64_t);
}

const BitVector* NaiveIndex::filter(FilterId id) const {
  auto it = position_.find(id);
  return it == position_.end() ? nullptr : &entries_[it->second].second;
}

}  // namespace bloofi
