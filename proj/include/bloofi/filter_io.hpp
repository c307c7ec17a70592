#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "bloofi/bloom_filter.hpp"
#include "bloofi/membership_index.hpp"

namespace bloofi {

// Filter collection file, all integers little-endian:
//
//   "BLMF"              4 bytes
//   version             u16 (= 1)
//   m                   u64
//   k                   u32
//   multipliers         k x u64
//   filter_count        u32
//   filter_count records of:
//     filter_id         u64
//     words             ceil(m/64) x u64, padding bits zero
//
// One file carries one hash family, so every filter in it can be indexed
// together.

inline constexpr std::uint16_t kFilterFileVersion = 1;

struct FilterCollection {
  FamilyPtr family;
  std::vector<std::pair<FilterId, BloomFilter>> filters;
};

std::size_t filter_file_header_bytes(std::size_t k);
std::size_t filter_file_record_bytes(std::size_t m);

/// Throws UsageError if a filter uses a different family, IoError on write
/// failure.
void write_collection(std::ostream& out, const HashFamily& family,
                      std::span<const std::pair<FilterId, BloomFilter>> filters);
void write_collection(const std::filesystem::path& path, const HashFamily& family,
                      std::span<const std::pair<FilterId, BloomFilter>> filters);

/// Throws FormatError on bad magic/version and CorruptionError on truncation,
/// nonzero padding or malformed family parameters.
FilterCollection read_collection(std::istream& in);
FilterCollection read_collection(const std::filesystem::path& path);

}  // namespace bloofi
