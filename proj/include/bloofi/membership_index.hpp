#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bloofi/bloom_filter.hpp"

namespace bloofi {

using FilterId = std::uint64_t;

/// Common surface of the all-membership indexes: given an element, report
/// every indexed filter that matches it.
///
/// access_cost() counts Bloom filters examined since the last reset_cost():
/// tree nodes for Bloofi, resident filters for the flat and naive scans.
class MembershipIndex {
 public:
  virtual ~MembershipIndex() = default;

  virtual std::string_view name() const = 0;
  virtual const FamilyPtr& family() const = 0;

  virtual void insert(FilterId id, const BloomFilter& filter) = 0;
  virtual void remove(FilterId id) = 0;
  virtual void update(FilterId id, const BloomFilter& filter) = 0;

  /// Matching ids, in no particular order.
  virtual std::vector<FilterId> find_matches(std::uint64_t element) = 0;

  virtual bool contains(FilterId id) const = 0;
  virtual std::size_t size() const = 0;
  virtual std::size_t storage_bytes() const = 0;

  virtual std::uint64_t access_cost() const = 0;
  virtual void reset_cost() = 0;
};

}  // namespace bloofi
