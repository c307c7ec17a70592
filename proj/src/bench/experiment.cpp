#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "bloofi/bench/experiment.hpp"
#include "bloofi/bloofi_tree.hpp"
#include "bloofi/errors.hpp"
#include "bloofi/flat_bloofi.hpp"
#include "bloofi/naive_index.hpp"

namespace bloofi::bench {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kQueryStream = 0xD6E8FEB86659FD93ULL;
constexpr std::uint64_t kSampleStream = 0xA0761D6478BD642FULL;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<IndexKind> selected_kinds(IndexKind kind) {
  if (kind == IndexKind::kAll) return {IndexKind::kBloofi, IndexKind::kFlat, IndexKind::kNaive};
  return {kind};
}

// Mean of the per-repetition values over the last half of the repetitions.
double tail_mean(const std::vector<double>& values) {
  const std::size_t keep = std::max<std::size_t>(1, values.size() / 2);
  const auto first = values.end() - static_cast<std::ptrdiff_t>(keep);
  return std::accumulate(first, values.end(), 0.0) / static_cast<double>(keep);
}

struct SearchStats {
  double bf_cost = 0.0;
  double time_ms = 0.0;
  double matches = 0.0;
};

SearchStats measure_search(MembershipIndex& index, std::span<const std::uint64_t> queries,
                           std::size_t repetitions) {
  std::vector<double> costs;
  std::vector<double> times;
  std::vector<double> matches;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    index.reset_cost();
    std::size_t found = 0;
    const auto start = Clock::now();
    for (auto q : queries) found += index.find_matches(q).size();
    const double ms = elapsed_ms(start);
    const auto n = static_cast<double>(queries.size());
    times.push_back(ms / n);
    costs.push_back(static_cast<double>(index.access_cost()) / n);
    matches.push_back(static_cast<double>(found) / n);
  }
  return {tail_mean(costs), tail_mean(times), tail_mean(matches)};
}

struct OpStats {
  std::vector<double> cost;
  std::vector<double> time;
};

template <typename Fn>
void timed_batch(MembershipIndex& index, std::size_t ops, OpStats& stats, Fn&& body) {
  index.reset_cost();
  const auto start = Clock::now();
  body();
  const double ms = elapsed_ms(start);
  stats.time.push_back(ms / static_cast<double>(ops));
  stats.cost.push_back(static_cast<double>(index.access_cost()) / static_cast<double>(ops));
}

// Each repetition deletes a fixed sample of filters, re-inserts them, then
// updates each with one extra element.
void measure_maintenance(MembershipIndex& index, const ExperimentConfig& config,
                         std::span<const std::pair<FilterId, BloomFilter>> filters,
                         std::uint64_t absent_base, MetricsRecord& record) {
  const std::size_t ops = std::min(config.maintenance_ops, filters.size());
  if (ops == 0) return;

  std::vector<std::size_t> picks(filters.size());
  std::iota(picks.begin(), picks.end(), 0);
  std::mt19937_64 gen(config.seed ^ kSampleStream);
  std::shuffle(picks.begin(), picks.end(), gen);
  picks.resize(ops);

  std::vector<BloomFilter> grown;
  grown.reserve(ops);
  for (std::size_t i = 0; i < ops; ++i) {
    const auto& [id, filter] = filters[picks[i]];
    BloomFilter g = filter;
    g.add(absent_base + id);
    grown.push_back(std::move(g));
  }

  OpStats del, ins, upd;
  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    timed_batch(index, ops, del, [&] {
      for (auto p : picks) index.remove(filters[p].first);
    });
    timed_batch(index, ops, ins, [&] {
      for (auto p : picks) index.insert(filters[p].first, filters[p].second);
    });
    timed_batch(index, ops, upd, [&] {
      for (std::size_t i = 0; i < ops; ++i) index.update(filters[picks[i]].first, grown[i]);
    });
  }
  record.delete_bf_cost = tail_mean(del.cost);
  record.delete_time_ms = tail_mean(del.time);
  record.insert_bf_cost = tail_mean(ins.cost);
  record.insert_time_ms = tail_mean(ins.time);
  record.update_bf_cost = tail_mean(upd.cost);
  record.update_time_ms = tail_mean(upd.time);
}

MetricsRecord measure(IndexKind kind, const ExperimentConfig& config, const FamilyPtr& family,
                      std::span<const std::pair<FilterId, BloomFilter>> build_filters,
                      std::span<const std::pair<FilterId, BloomFilter>> final_filters,
                      std::span<const std::uint64_t> queries, std::uint64_t absent_base) {
  MetricsRecord record;
  record.config = config;
  record.index = kind;
  record.m = family->m();
  record.k = family->k();

  auto index = build_index(kind, config, family, build_filters);
  if (build_filters.data() != final_filters.data()) {
    for (const auto& [id, filter] : final_filters) index->update(id, filter);
  }
  record.storage_bytes = index->storage_bytes();
  const auto search = measure_search(*index, queries, config.repetitions);
  record.search_bf_cost = search.bf_cost;
  record.search_time_ms = search.time_ms;
  record.matches_per_query = search.matches;
  measure_maintenance(*index, config, final_filters, absent_base, record);
  return record;
}

}  // namespace

std::unique_ptr<MembershipIndex> build_index(IndexKind kind, const ExperimentConfig& config,
                                             const FamilyPtr& family,
                                             std::span<const std::pair<FilterId, BloomFilter>> filters) {
  switch (kind) {
    case IndexKind::kBloofi: {
      BloofiOptions options{config.order, config.metric, config.heuristic};
      if (config.construction == Construction::kBulk) {
        return std::make_unique<BloofiTree>(BloofiTree::bulk_build(family, options, filters));
      }
      auto tree = std::make_unique<BloofiTree>(family, options);
      for (const auto& [id, filter] : filters) tree->insert(id, filter);
      return tree;
    }
    case IndexKind::kFlat: {
      auto flat = std::make_unique<FlatBloofi>(family);
      for (const auto& [id, filter] : filters) flat->insert(id, filter);
      return flat;
    }
    case IndexKind::kNaive: {
      auto naive = std::make_unique<NaiveIndex>(family);
      for (const auto& [id, filter] : filters) naive->insert(id, filter);
      return naive;
    }
    case IndexKind::kAll:
      break;
  }
  throw ParameterError("build_index needs a single index kind");
}

std::vector<MetricsRecord> run_experiment(const ExperimentConfig& config) {
  if (config.after_updates) return run_update_phase(config);
  const auto population = generate_population(config);
  const auto filters = population.filters();
  const auto queries = make_queries(population, config.queries, config.seed ^ kQueryStream);
  std::vector<MetricsRecord> records;
  for (auto kind : selected_kinds(config.index)) {
    records.push_back(
        measure(kind, config, population.family, filters, filters, queries, population.universe_end));
  }
  return records;
}

std::vector<MetricsRecord> run_experiment(const ExperimentConfig& config,
                                          const FilterCollection& collection) {
  config.validate();
  if (config.after_updates) {
    throw ParameterError("after-updates runs need element lists; loaded collections have none");
  }
  if (collection.filters.empty()) throw ParameterError("loaded collection holds no filters");
  Population population;
  population.family = collection.family;
  const auto queries = make_queries(population, config.queries, config.seed ^ kQueryStream);
  std::vector<MetricsRecord> records;
  for (auto kind : selected_kinds(config.index)) {
    auto record = measure(kind, config, collection.family, collection.filters, collection.filters,
                          queries, std::uint64_t{1} << 62);
    record.config.num_filters = collection.filters.size();
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<MetricsRecord> run_update_phase(const ExperimentConfig& config) {
  const auto population = generate_population(config);
  const auto half = population.filters(0.5);
  const auto full = population.filters();
  const auto queries = make_queries(population, config.queries, config.seed ^ kQueryStream);
  auto cfg = config;
  cfg.after_updates = true;
  std::vector<MetricsRecord> records;
  for (auto kind : selected_kinds(config.index)) {
    records.push_back(measure(kind, cfg, population.family, half, full, queries, population.universe_end));
  }
  return records;
}

}  // namespace bloofi::bench
