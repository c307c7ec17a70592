#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "bloofi/bench/experiment.hpp"
#include "bloofi/errors.hpp"
#include "test_support.hpp"

namespace bloofi::bench {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.num_filters = 120;
  config.expected_elements = 500;
  config.num_elements = 20;
  config.queries = 400;
  config.repetitions = 2;
  config.maintenance_ops = 10;
  return config;
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST(PopulationTest, NonrandomRanges) {
  auto config = small_config();
  config.num_filters = 2;
  config.num_elements = 3;
  const auto pop = generate_population(config);
  ASSERT_EQ(pop.members.size(), 2U);
  EXPECT_EQ(pop.members[0].elements, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(pop.members[1].elements, (std::vector<std::uint64_t>{3, 4, 5}));
  EXPECT_EQ(pop.universe_end, 6U);
}

TEST(PopulationTest, NonrandomSetsAreDisjoint) {
  const auto pop = generate_population(small_config());
  std::set<std::uint64_t> seen;
  for (const auto& m : pop.members)
    for (auto e : m.elements) EXPECT_TRUE(seen.insert(e).second);
}

TEST(PopulationTest, RandomIsDeterministicAndInWindow) {
  auto config = small_config();
  config.distribution = Distribution::kRandom;
  const auto a = generate_population(config);
  const auto b = generate_population(config);
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    EXPECT_EQ(a.members[i].elements, b.members[i].elements);
    std::set<std::uint64_t> distinct(a.members[i].elements.begin(), a.members[i].elements.end());
    EXPECT_EQ(distinct.size(), config.num_elements);
    EXPECT_LT(*distinct.rbegin() - *distinct.begin(), 2 * config.num_elements);
    EXPECT_LT(*distinct.rbegin(), a.universe_end);
  }
  config.seed = 7;
  const auto c = generate_population(config);
  EXPECT_NE(a.members[0].elements, c.members[0].elements);
}

TEST(PopulationTest, QueriesAlternatePresentAndAbsent) {
  const auto pop = generate_population(small_config());
  const auto queries = make_queries(pop, 100, 3);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (i % 2 == 0) EXPECT_LT(queries[i], pop.universe_end);
    else EXPECT_GE(queries[i], pop.universe_end);
  }
  EXPECT_EQ(queries, make_queries(pop, 100, 3));
}

TEST(ConfigTest, RejectsBadValues) {
  auto config = small_config();
  config.order = 1;
  EXPECT_THROW(config.validate(), ParameterError);
  config = small_config();
  config.fpp = 1.5;
  EXPECT_THROW(config.validate(), ParameterError);
  config = small_config();
  config.num_filters = 0;
  EXPECT_THROW(config.validate(), ParameterError);
}

TEST(ExperimentTest, CostsAndStorage) {
  const auto records = run_experiment(small_config());
  ASSERT_EQ(records.size(), 3U);
  const MetricsRecord* bloofi = nullptr;
  const MetricsRecord* naive = nullptr;
  for (const auto& r : records) {
    if (r.index == IndexKind::kBloofi) bloofi = &r;
    if (r.index == IndexKind::kNaive) naive = &r;
  }
  ASSERT_NE(bloofi, nullptr);
  ASSERT_NE(naive, nullptr);
  EXPECT_DOUBLE_EQ(naive->search_bf_cost, 120.0);
  EXPECT_LT(bloofi->search_bf_cost, naive->search_bf_cost);
  EXPECT_LE(bloofi->storage_bytes, 2 * naive->storage_bytes);
  EXPECT_LT(bloofi->update_bf_cost, bloofi->insert_bf_cost);
  for (const auto& r : records) EXPECT_DOUBLE_EQ(r.matches_per_query, records[0].matches_per_query);
}

TEST(ExperimentTest, BfCostsAreDeterministic) {
  const auto a = run_experiment(small_config());
  const auto b = run_experiment(small_config());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].search_bf_cost, b[i].search_bf_cost);
    EXPECT_EQ(a[i].insert_bf_cost, b[i].insert_bf_cost);
    EXPECT_EQ(a[i].delete_bf_cost, b[i].delete_bf_cost);
    EXPECT_EQ(a[i].update_bf_cost, b[i].update_bf_cost);
    EXPECT_EQ(a[i].storage_bytes, b[i].storage_bytes);
  }
}

TEST(ExperimentTest, AfterUpdatesMatchesFreshBuild) {
  auto config = small_config();
  const auto pop = generate_population(config);
  const auto full = pop.filters();
  const auto half = pop.filters(0.5);
  for (auto kind : {IndexKind::kBloofi, IndexKind::kFlat, IndexKind::kNaive}) {
    auto fresh = build_index(kind, config, pop.family, full);
    auto updated = build_index(kind, config, pop.family, half);
    for (const auto& [id, f] : full) updated->update(id, f);
    for (auto x : make_queries(pop, 500, 11))
      EXPECT_EQ(testing::sorted(updated->find_matches(x)), testing::sorted(fresh->find_matches(x)));
  }
  config.after_updates = true;
  const auto records = run_experiment(config);
  ASSERT_EQ(records.size(), 3U);
  for (const auto& r : records) EXPECT_TRUE(r.config.after_updates);
}

TEST(ExperimentTest, BulkAndMetricsSelectable) {
  auto config = small_config();
  config.index = IndexKind::kBloofi;
  config.construction = Construction::kBulk;
  config.metric = Metric::kJaccard;
  const auto records = run_experiment(config);
  ASSERT_EQ(records.size(), 1U);
  EXPECT_EQ(records[0].index, IndexKind::kBloofi);
  EXPECT_GT(records[0].search_bf_cost, 0.0);
}

TEST(CsvTest, HeaderAndRows) {
  std::ostringstream empty;
  emit_csv({}, empty);
  EXPECT_EQ(count_lines(empty.str()), 1U);
  EXPECT_EQ(empty.str().rfind("num_filters,order,", 0), 0U);

  const auto records = run_experiment(small_config());
  std::ostringstream out;
  emit_csv(records, out);
  EXPECT_EQ(count_lines(out.str()), 1 + records.size());
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  const auto columns = std::count(header.begin(), header.end(), ',');
  for (std::string line; std::getline(lines, line);) EXPECT_EQ(std::count(line.begin(), line.end(), ','), columns);
}

}  // namespace
}  // namespace bloofi::bench
