#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bloofi/bloom_filter.hpp"
#include "bloofi/distance.hpp"
#include "bloofi/filter_io.hpp"
#include "bloofi/membership_index.hpp"
#include "bloofi/params.hpp"

namespace bloofi::bench {

enum class Construction { kIterative, kBulk };
enum class Distribution { kNonrandom, kRandom };
enum class IndexKind { kBloofi, kFlat, kNaive, kAll };

std::string_view to_string(Construction c);
std::string_view to_string(Distribution d);
std::string_view to_string(IndexKind k);
std::optional<Construction> parse_construction(std::string_view s);
std::optional<Distribution> parse_distribution(std::string_view s);
std::optional<IndexKind> parse_index_kind(std::string_view s);

/// One point of the experimental grid. Defaults reproduce the baseline
/// setting: 1000 filters of 100 elements, order 2, m = 100992 (10000 expected
/// elements at 1% false positives), iterative Hamming construction over
/// disjoint element ranges.
struct ExperimentConfig {
  std::size_t num_filters = 1000;
  std::size_t order = 2;
  std::uint64_t expected_elements = 10000;
  std::size_t num_elements = 100;
  double fpp = 0.01;
  Construction construction = Construction::kIterative;
  Metric metric = Metric::kHamming;
  Distribution distribution = Distribution::kNonrandom;
  IndexKind index = IndexKind::kAll;
  bool heuristic = true;
  std::size_t queries = 5000;
  std::uint64_t seed = 42;
  /// Timed repetitions; means are taken over the last half.
  std::size_t repetitions = 10;
  /// Filters deleted, re-inserted and updated per repetition; 0 skips
  /// maintenance measurement.
  std::size_t maintenance_ops = 100;
  /// Build from the first half of every filter's elements, then update each
  /// filter in place with its full element set before measuring.
  bool after_updates = false;

  /// Throws ParameterError describing the first invalid field.
  void validate() const;
  FilterParams filter_params() const;
};

struct Member {
  FilterId id = 0;
  std::vector<std::uint64_t> elements;
};

/// Filters to index plus the elements behind them. Elements all lie below
/// universe_end, so anything at or above it is absent from every filter.
struct Population {
  FamilyPtr family;
  std::vector<Member> members;
  std::uint64_t universe_end = 0;

  /// Filters built from the first `fraction` of each member's elements.
  std::vector<std::pair<FilterId, BloomFilter>> filters(double fraction = 1.0) const;
};

/// nonrandom: filter i holds [i*n, (i+1)*n). random: filter i holds n
/// distinct integers drawn from [s, s + 2n) with s uniform in [0, N*n).
Population generate_population(const ExperimentConfig& config);

/// Half present elements, half absent ones (drawn from [universe_end, 2^63)),
/// alternating. When the population has no element lists, all queries are
/// uniform 64-bit values.
std::vector<std::uint64_t> make_queries(const Population& population, std::size_t count,
                                        std::uint64_t seed);

struct MetricsRecord {
  ExperimentConfig config;
  IndexKind index = IndexKind::kBloofi;
  std::size_t m = 0;
  std::size_t k = 0;

  double search_bf_cost = 0.0;
  double search_time_ms = 0.0;
  std::size_t storage_bytes = 0;
  double insert_bf_cost = 0.0;
  double insert_time_ms = 0.0;
  double delete_bf_cost = 0.0;
  double delete_time_ms = 0.0;
  double update_bf_cost = 0.0;
  double update_time_ms = 0.0;
  double matches_per_query = 0.0;
};

/// Builds the index selected by `kind` over `filters`.
std::unique_ptr<MembershipIndex> build_index(IndexKind kind, const ExperimentConfig& config,
                                             const FamilyPtr& family,
                                             std::span<const std::pair<FilterId, BloomFilter>> filters);

/// One record per selected index kind (three for IndexKind::kAll). Honors
/// config.after_updates by delegating to run_update_phase.
std::vector<MetricsRecord> run_experiment(const ExperimentConfig& config);

/// Same measurements over a loaded collection instead of a generated one.
/// The collection's family overrides the m and k implied by the config.
std::vector<MetricsRecord> run_experiment(const ExperimentConfig& config,
                                          const FilterCollection& collection);

/// Builds from half of every filter's elements, updates each filter in place
/// with the full set, then measures.
std::vector<MetricsRecord> run_update_phase(const ExperimentConfig& config);

void emit_csv(std::span<const MetricsRecord> records, std::ostream& out);
void emit_csv(std::span<const MetricsRecord> records, const std::filesystem::path& path);

}  // namespace bloofi::bench
