#pragma once

#include <cstddef>
#include <cstdint>

namespace bloofi {

/// Bloom filter sizing derived from an expected element count and a target
/// false-positive probability.
struct FilterParams {
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t n_exp = 0;
  double rho_false = 0.0;
};

/// k = ceil(-ln(rho) / ln 2); m = ceil(k / ln 2 * n_exp) rounded up to a
/// multiple of 64. Throws ParameterError unless n_exp >= 1 and 0 < rho < 1.
FilterParams derive_params(std::uint64_t n_exp, double rho_false);

/// m before the word rounding; exposed for tests.
std::size_t raw_filter_bits(std::size_t k, std::uint64_t n_exp);

/// (1 - e^{-kn/m})^k
double expected_fpp(std::size_t k, std::size_t m, std::uint64_t n);
inline double expected_fpp(const FilterParams& params, std::uint64_t n) {
  return expected_fpp(params.k, params.m, n);
}

}  // namespace bloofi
