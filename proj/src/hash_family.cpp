#include "bloofi/hash_family.hpp"

#include <random>

#include "bloofi/errors.hpp"

namespace bloofi {

HashFamily::HashFamily(std::size_t m, std::vector<std::uint64_t> multipliers)
    : m_(m), multipliers_(std::move(multipliers)) {
  if (m_ == 0) throw ParameterError("hash range m must be positive");
  if (multipliers_.empty()) throw ParameterError("hash family needs at least one function");
  for (auto a : multipliers_) {
    if ((a & 1U) == 0) throw ParameterError("hash multipliers must be odd");
  }
}

HashFamily HashFamily::random(std::size_t k, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> multipliers(k);
  for (auto& a : multipliers) a = gen() | 1U;
  return HashFamily(m, std::move(multipliers));
}

void HashFamily::positions(std::uint64_t x, std::vector<std::size_t>& out) const {
  out.resize(multipliers_.size());
  for (std::size_t i = 0; i < multipliers_.size(); ++i) out[i] = position(i, x);
}

std::vector<std::size_t> HashFamily::positions(std::uint64_t x) const {
  std::vector<std::size_t> out;
  positions(x, out);
  return out;
}

}  // namespace bloofi
