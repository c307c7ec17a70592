#include "bloofi/filter_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "bloofi/errors.hpp"

namespace bloofi {

namespace {

constexpr std::array<char, 4> kMagic = {'B', 'L', 'M', 'F'};

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFFU);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw CorruptionError(std::string("filter file truncated while reading ") + what);
  }
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= std::uint64_t{bytes[i]} << (8 * i);
  return static_cast<T>(value);
}

}  // namespace

std::size_t filter_file_header_bytes(std::size_t k) { return 4 + 2 + 8 + 4 + 8 * k + 4; }

std::size_t filter_file_record_bytes(std::size_t m) { return 8 + 8 * words_for_bits(m); }

void write_collection(std::ostream& out, const HashFamily& family,
                      std::span<const std::pair<FilterId, BloomFilter>> filters) {
  if (filters.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw UsageError("too many filters for one collection file");
  }
  for (const auto& [id, filter] : filters) {
    if (!filter.compatible_with(family)) {
      throw UsageError("filter " + std::to_string(id) + " uses a different hash family");
    }
  }
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint16_t>(out, kFilterFileVersion);
  put_le<std::uint64_t>(out, family.m());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(family.k()));
  for (auto a : family.multipliers()) put_le<std::uint64_t>(out, a);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(filters.size()));
  for (const auto& [id, filter] : filters) {
    put_le<std::uint64_t>(out, id);
    for (auto w : filter.bits().words()) put_le<std::uint64_t>(out, w);
  }
  if (!out) throw IoError("failed writing filter collection");
}

void write_collection(const std::filesystem::path& path, const HashFamily& family,
                      std::span<const std::pair<FilterId, BloomFilter>> filters) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_collection(out, family, filters);
  out.close();
  if (!out) throw IoError("failed closing " + path.string());
}

FilterCollection read_collection(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kMagic) {
    throw FormatError("not a filter collection file (bad magic)");
  }
  const auto version = get_le<std::uint16_t>(in, "version");
  if (version != kFilterFileVersion) {
    throw FormatError("unsupported filter file version " + std::to_string(version));
  }
  const auto m = get_le<std::uint64_t>(in, "m");
  const auto k = get_le<std::uint32_t>(in, "k");
  if (m == 0 || k == 0) throw CorruptionError("filter file declares m or k of zero");
  std::vector<std::uint64_t> multipliers;
  multipliers.reserve(std::min<std::uint32_t>(k, 1024));
  for (std::uint32_t i = 0; i < k; ++i) multipliers.push_back(get_le<std::uint64_t>(in, "multiplier"));

  FilterCollection result;
  try {
    result.family = std::make_shared<const HashFamily>(static_cast<std::size_t>(m), std::move(multipliers));
  } catch (const ParameterError& e) {
    throw CorruptionError(std::string("filter file has an invalid hash family: ") + e.what());
  }

  const auto count = get_le<std::uint32_t>(in, "filter count");
  const std::size_t words = words_for_bits(static_cast<std::size_t>(m));
  for (std::uint32_t r = 0; r < count; ++r) {
    const auto id = get_le<std::uint64_t>(in, "filter id");
    std::vector<std::uint64_t> data(words);
    for (auto& w : data) w = get_le<std::uint64_t>(in, "filter words");
    result.filters.emplace_back(
        id, BloomFilter(result.family, BitVector::from_words(static_cast<std::size_t>(m), std::move(data))));
  }
  return result;
}

FilterCollection read_collection(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_collection(in);
}

}  // namespace bloofi
