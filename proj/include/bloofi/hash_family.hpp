#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bloofi {

/// k multiplicative hashes h_i(x) = (a_i * x mod 2^64) mod m with odd a_i.
/// The multiply wraps at 64 bits; a single multiplier of 1 gives x mod m.
class HashFamily {
 public:
  /// Throws ParameterError on m == 0, an empty multiplier list or an even
  /// multiplier.
  HashFamily(std::size_t m, std::vector<std::uint64_t> multipliers);

  /// k odd multipliers drawn from a 64-bit Mersenne twister seeded with `seed`.
  static HashFamily random(std::size_t k, std::size_t m, std::uint64_t seed);

  std::size_t k() const { return multipliers_.size(); }
  std::size_t m() const { return m_; }
  std::span<const std::uint64_t> multipliers() const { return multipliers_; }

  std::size_t position(std::size_t i, std::uint64_t x) const {
    return static_cast<std::size_t>((multipliers_[i] * x) % m_);
  }

  /// Writes the k positions of x into out (resized to k).
  void positions(std::uint64_t x, std::vector<std::size_t>& out) const;
  std::vector<std::size_t> positions(std::uint64_t x) const;

  bool operator==(const HashFamily& other) const = default;

 private:
  std::size_t m_;
  std::vector<std::uint64_t> multipliers_;
};

}  // namespace bloofi
