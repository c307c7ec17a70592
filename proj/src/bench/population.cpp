#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "bloofi/bench/experiment.hpp"
#include "bloofi/errors.hpp"

namespace bloofi::bench {

namespace {

// Separate streams for hash multipliers, element placement and queries.
constexpr std::uint64_t kHashStream = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPopulationStream = 0xC2B2AE3D27D4EB4FULL;

}  // namespace

std::string_view to_string(Construction c) {
  return c == Construction::kBulk ? "bulk" : "iterative";
}

std::string_view to_string(Distribution d) {
  return d == Distribution::kRandom ? "random" : "nonrandom";
}

std::string_view to_string(IndexKind k) {
  switch (k) {
    case IndexKind::kBloofi: return "bloofi";
    case IndexKind::kFlat: return "flat";
    case IndexKind::kNaive: return "naive";
    case IndexKind::kAll: return "all";
  }
  return "unknown";
}

std::optional<Construction> parse_construction(std::string_view s) {
  if (s == "iterative") return Construction::kIterative;
  if (s == "bulk") return Construction::kBulk;
  return std::nullopt;
}

std::optional<Distribution> parse_distribution(std::string_view s) {
  if (s == "nonrandom") return Distribution::kNonrandom;
  if (s == "random") return Distribution::kRandom;
  return std::nullopt;
}

std::optional<IndexKind> parse_index_kind(std::string_view s) {
  if (s == "bloofi") return IndexKind::kBloofi;
  if (s == "flat") return IndexKind::kFlat;
  if (s == "naive") return IndexKind::kNaive;
  if (s == "all") return IndexKind::kAll;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (num_filters == 0) throw ParameterError("number of filters must be positive");
  if (order < 2) throw ParameterError("bloofi order must be at least 2");
  if (num_elements == 0) throw ParameterError("number of elements per filter must be positive");
  if (queries == 0) throw ParameterError("query count must be positive");
  if (repetitions == 0) throw ParameterError("repetition count must be positive");
  (void)filter_params();
}

FilterParams ExperimentConfig::filter_params() const {
  return derive_params(expected_elements, fpp);
}

std::vector<std::pair<FilterId, BloomFilter>> Population::filters(double fraction) const {
  std::vector<std::pair<FilterId, BloomFilter>> out;
  out.reserve(members.size());
  for (const auto& member : members) {
    BloomFilter filter(family);
    const auto take = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(member.elements.size())));
    filter.add_all(std::span(member.elements).first(std::min(take, member.elements.size())));
    out.emplace_back(member.id, std::move(filter));
  }
  return out;
}

Population generate_population(const ExperimentConfig& config) {
  config.validate();
  const auto params = config.filter_params();
  const std::uint64_t n = config.num_elements;
  const std::uint64_t total = static_cast<std::uint64_t>(config.num_filters) * n;

  Population pop;
  pop.family = std::make_shared<const HashFamily>(
      HashFamily::random(params.k, params.m, config.seed ^ kHashStream));
  pop.members.resize(config.num_filters);

  if (config.distribution == Distribution::kNonrandom) {
    for (std::size_t i = 0; i < config.num_filters; ++i) {
      auto& member = pop.members[i];
      member.id = i;
      member.elements.resize(n);
      std::iota(member.elements.begin(), member.elements.end(), static_cast<std::uint64_t>(i) * n);
    }
    pop.universe_end = total;
    return pop;
  }

  std::mt19937_64 gen(config.seed ^ kPopulationStream);
  std::uniform_int_distribution<std::uint64_t> start_dist(0, total - 1);
  std::vector<std::uint64_t> window(2 * n);
  for (std::size_t i = 0; i < config.num_filters; ++i) {
    auto& member = pop.members[i];
    member.id = i;
    const std::uint64_t start = start_dist(gen);
    std::iota(window.begin(), window.end(), start);
    // Partial Fisher-Yates: the first n entries become a uniform sample.
    for (std::size_t j = 0; j < n; ++j) {
      std::uniform_int_distribution<std::size_t> pick(j, window.size() - 1);
      std::swap(window[j], window[pick(gen)]);
    }
    member.elements.assign(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(n));
  }
  pop.universe_end = total + 2 * n;
  return pop;
}

std::vector<std::uint64_t> make_queries(const Population& population, std::size_t count,
                                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> queries;
  queries.reserve(count);
  const bool has_elements =
      std::any_of(population.members.begin(), population.members.end(),
                  [](const Member& m) { return !m.elements.empty(); });
  if (!has_elements) {
    for (std::size_t i = 0; i < count; ++i) queries.push_back(gen());
    return queries;
  }
  std::uniform_int_distribution<std::size_t> member_dist(0, population.members.size() - 1);
  std::uniform_int_distribution<std::uint64_t> absent_dist(population.universe_end,
                                                           (std::uint64_t{1} << 63) - 1);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      const Member* member = nullptr;
      do {
        member = &population.members[member_dist(gen)];
      } while (member->elements.empty());
      std::uniform_int_distribution<std::size_t> elem_dist(0, member->elements.size() - 1);
      queries.push_back(member->elements[elem_dist(gen)]);
    } else {
      queries.push_back(absent_dist(gen));
    }
  }
  return queries;
}

}  // namespace bloofi::bench
