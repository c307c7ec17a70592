#include "bloofi/distance.hpp"

#include <cmath>

#include "bloofi/errors.hpp"

namespace bloofi {

double distance(const BitVector& a, const BitVector& b, Metric metric) {
  if (a.size() != b.size()) throw UsageError("distance between bit vectors of different length");
  switch (metric) {
    case Metric::kHamming:
      return static_cast<double>(popcount_xor(a, b));
    case Metric::kJaccard: {
      const auto uni = popcount_or(a, b);
      if (uni == 0) return 0.0;
      return 1.0 - static_cast<double>(popcount_and(a, b)) / static_cast<double>(uni);
    }
    case Metric::kCosine: {
      const auto ca = a.count();
      const auto cb = b.count();
      if (ca == 0 || cb == 0) return (ca == 0 && cb == 0) ? 0.0 : 1.0;
      const double norm = std::sqrt(static_cast<double>(ca)) * std::sqrt(static_cast<double>(cb));
      return 1.0 - static_cast<double>(popcount_and(a, b)) / norm;
    }
  }
  return 0.0;
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kHamming: return "hamming";
    case Metric::kJaccard: return "jaccard";
    case Metric::kCosine: return "cosine";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "hamming") return Metric::kHamming;
  if (name == "jaccard") return Metric::kJaccard;
  if (name == "cosine") return Metric::kCosine;
  return std::nullopt;
}

}  // namespace bloofi
