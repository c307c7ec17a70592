#include "bloofi/params.hpp"

#include <cmath>
#include <numbers>

#include "bloofi/bit_vector.hpp"
#include "bloofi/errors.hpp"

namespace bloofi {

std::size_t raw_filter_bits(std::size_t k, std::uint64_t n_exp) {
  return static_cast<std::size_t>(
      std::ceil(static_cast<double>(k) / std::numbers::ln2 * static_cast<double>(n_exp)));
}

FilterParams derive_params(std::uint64_t n_exp, double rho_false) {
  if (n_exp == 0) throw ParameterError("expected element count must be at least 1");
  if (!(rho_false > 0.0 && rho_false < 1.0)) {
    throw ParameterError("false positive probability must lie in (0, 1)");
  }
  FilterParams p;
  p.n_exp = n_exp;
  p.rho_false = rho_false;
  p.k = static_cast<std::size_t>(std::ceil(-std::log(rho_false) / std::numbers::ln2));
  p.m = words_for_bits(raw_filter_bits(p.k, n_exp)) * kWordBits;
  return p;
}

double expected_fpp(std::size_t k, std::size_t m, std::uint64_t n) {
  if (m == 0) throw ParameterError("filter length must be positive");
  const double kd = static_cast<double>(k);
  return std::pow(1.0 - std::exp(-kd * static_cast<double>(n) / static_cast<double>(m)), kd);
}

}  // namespace bloofi
