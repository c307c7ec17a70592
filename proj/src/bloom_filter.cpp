#include "bloofi/bloom_filter.hpp"

#include "bloofi/errors.hpp"

namespace bloofi {

BloomFilter::BloomFilter(FamilyPtr family) : family_(std::move(family)) {
  if (!family_) throw UsageError("bloom filter needs a hash family");
  bits_ = BitVector(family_->m());
}

BloomFilter::BloomFilter(FamilyPtr family, BitVector bits)
    : family_(std::move(family)), bits_(std::move(bits)) {
  if (!family_) throw UsageError("bloom filter needs a hash family");
  if (bits_.size() != family_->m()) {
    throw UsageError("filter length " + std::to_string(bits_.size()) +
                     " does not match hash range " + std::to_string(family_->m()));
  }
}

void BloomFilter::add(std::uint64_t element) {
  for (std::size_t i = 0; i < family_->k(); ++i) bits_.set(family_->position(i, element));
}

void BloomFilter::add_all(std::span<const std::uint64_t> elements) {
  for (auto e : elements) add(e);
}

bool BloomFilter::query(std::uint64_t element) const {
  for (std::size_t i = 0; i < family_->k(); ++i) {
    if (!bits_.test(family_->position(i, element))) return false;
  }
  return true;
}

bool BloomFilter::compatible_with(const HashFamily& family) const {
  return family_.get() == &family || *family_ == family;
}

}  // namespace bloofi
