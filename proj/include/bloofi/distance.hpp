#pragma once

#include <optional>
#include <string_view>

#include "bloofi/bit_vector.hpp"

namespace bloofi {

enum class Metric { kHamming, kJaccard, kCosine };

/// Hamming = |a xor b|, Jaccard = 1 - |a and b| / |a or b|,
/// Cosine = 1 - |a and b| / sqrt(|a| |b|). Jaccard and Cosine return 0 for two
/// empty vectors and 1 when exactly one is empty.
double distance(const BitVector& a, const BitVector& b, Metric metric);

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

}  // namespace bloofi
