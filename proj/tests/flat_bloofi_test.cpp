#include <gtest/gtest.h>

#include <random>

#include "bloofi/errors.hpp"
#include "bloofi/flat_bloofi.hpp"
#include "bloofi/naive_index.hpp"
#include "test_support.hpp"

namespace bloofi {
namespace {

using testing::random_filter;
using testing::sorted;

FamilyPtr family_of(std::size_t k, std::size_t m, std::uint64_t seed) {
  return std::make_shared<const HashFamily>(HashFamily::random(k, m, seed));
}

void expect_valid(const auto& index) {
  auto problem = index.validate();
  EXPECT_FALSE(problem.has_value()) << *problem;
}

TEST(FlatBloofiTest, EmptyIndexMatchesNothing) {
  FlatBloofi index(family_of(3, 256, 1));
  EXPECT_TRUE(index.find_matches(17).empty());
  EXPECT_EQ(index.array_count(), 0U);
  EXPECT_EQ(index.storage_bytes(), 0U);
  EXPECT_EQ(index.words_read(), 0U);
}

TEST(FlatBloofiTest, ArraysGrowEveryWordOfFilters) {
  auto family = family_of(3, 256, 2);
  FlatBloofi index(family);
  std::mt19937_64 gen(3);
  for (FilterId id = 0; id < 64; ++id) index.insert(id, random_filter(family, gen, 10, 1000));
  EXPECT_EQ(index.array_count(), 1U);
  index.insert(64, random_filter(family, gen, 10, 1000));
  EXPECT_EQ(index.array_count(), 2U);
  EXPECT_EQ(index.slot_of(64), 64U);
  EXPECT_EQ(index.slice_word_count(), 2U * 256U);
  EXPECT_EQ(index.storage_bytes(), 4U * 8U * 2U * 64U);
  expect_valid(index);
}

TEST(FlatBloofiTest, FreedSlotIsReused) {
  auto family = family_of(2, 64, 4);
  BasicFlatBloofi<std::uint8_t> index(family);
  std::mt19937_64 gen(5);
  for (FilterId id = 0; id < 8; ++id) index.insert(id, random_filter(family, gen, 3, 100));
  index.remove(2);
  index.remove(5);
  expect_valid(index);
  index.insert(100, random_filter(family, gen, 3, 100));
  EXPECT_EQ(index.slot_of(100), 2U);
  index.insert(101, random_filter(family, gen, 3, 100));
  EXPECT_EQ(index.slot_of(101), 5U);
  EXPECT_EQ(index.array_count(), 1U);
  expect_valid(index);
}

// Deleting the only filter of an array drops it; later slots move down W.
void check_sole_occupant_delete(std::size_t count, std::size_t victim_slot) {
  auto family = family_of(2, 64, 6);
  BasicFlatBloofi<std::uint8_t> index(family);
  NaiveIndex naive(family);
  std::mt19937_64 gen(7);
  for (FilterId id = 0; id < count; ++id) {
    auto f = random_filter(family, gen, 3, 200);
    index.insert(id, f);
    naive.insert(id, f);
  }
  // Empty the victim's array apart from the victim itself.
  const std::size_t array = victim_slot / 8;
  for (std::size_t s = array * 8; s < array * 8 + 8 && s < count; ++s)
    if (s != victim_slot) {
      index.remove(s);
      naive.remove(s);
    }
  const std::size_t arrays_before = index.array_count();
  index.remove(victim_slot);
  naive.remove(victim_slot);
  expect_valid(index);
  EXPECT_EQ(index.array_count(), arrays_before - 1);
  for (FilterId id = 0; id < count; ++id) {
    if (!naive.contains(id)) continue;
    const auto before = id;
    const auto expected = before >= (array + 1) * 8 ? before - 8 : before;
    EXPECT_EQ(index.slot_of(id), expected);
    EXPECT_EQ(index.column(*index.slot_of(id)), *naive.filter(id));
  }
  for (std::uint64_t x = 0; x < 300; ++x) EXPECT_EQ(sorted(index.find_matches(x)), sorted(naive.find_matches(x)));
}

TEST(FlatBloofiTest, SoleOccupantDeleteDropsLastArray) { check_sole_occupant_delete(17, 16); }
TEST(FlatBloofiTest, SoleOccupantDeleteShiftsLaterArrays) { check_sole_occupant_delete(33, 16); }

TEST(FlatBloofiTest, ColumnDeleteZeroesOnlyThatSlot) {
  auto family = family_of(3, 128, 8);
  FlatBloofi index(family);
  std::mt19937_64 gen(9);
  std::vector<BloomFilter> filters;
  for (FilterId id = 0; id < 10; ++id) {
    filters.push_back(random_filter(family, gen, 8, 500));
    index.insert(id, filters.back());
  }
  index.remove(4);
  EXPECT_TRUE(index.column(4).none());
  for (FilterId id = 0; id < 10; ++id)
    if (id != 4) {
      EXPECT_EQ(index.column(*index.slot_of(id)), filters[id].bits());
    }
}

TEST(FlatBloofiTest, TranspositionIsExact) {
  auto family = family_of(4, 200, 10);
  FlatBloofi index(family);
  std::mt19937_64 gen(11);
  std::vector<BloomFilter> filters;
  for (FilterId id = 0; id < 150; ++id) {
    filters.push_back(random_filter(family, gen, 15, 10000));
    index.insert(id, filters.back());
  }
  for (FilterId id = 0; id < 150; ++id) {
    const auto slot = *index.slot_of(id);
    const auto column = index.column(slot);
    for (std::size_t i = 0; i < 200; ++i) EXPECT_EQ(column.test(i), filters[id].bits().test(i));
  }
}

TEST(FlatBloofiTest, WordsReadBoundedByKTimesArrays) {
  auto family = family_of(5, 1024, 12);
  FlatBloofi index(family);
  std::mt19937_64 gen(13);
  for (FilterId id = 0; id < 300; ++id) index.insert(id, random_filter(family, gen, 30, 100000));
  for (std::uint64_t x = 0; x < 1000; ++x) {
    index.reset_words_read();
    index.find_matches(x * 97);
    EXPECT_LE(index.words_read(), family->k() * index.array_count());
  }
}

TEST(FlatBloofiTest, UpdateOrsIntoColumn) {
  auto family = family_of(3, 256, 14);
  FlatBloofi index(family);
  BloomFilter f(family);
  f.add(1);
  index.insert(7, f);
  BloomFilter g(family);
  g.add(2);
  index.update(7, g);
  const auto column = index.column(*index.slot_of(7));
  EXPECT_TRUE(f.bits().is_subset_of(column));
  EXPECT_TRUE(g.bits().is_subset_of(column));
  EXPECT_LE(column.count(), f.bits().count() + 3);
  EXPECT_EQ(index.find_matches(2), std::vector<FilterId>{7});
  EXPECT_THROW(index.update(8, g), UsageError);
  EXPECT_THROW(index.insert(7, g), UsageError);
  EXPECT_THROW(index.remove(8), UsageError);
}

TEST(FlatBloofiTest, FuzzAgainstNaive) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto family = family_of(3, 96, seed);
    BasicFlatBloofi<std::uint8_t> small(family);
    FlatBloofi wide(family);
    NaiveIndex naive(family);
    std::mt19937_64 gen(seed + 100);
    std::vector<FilterId> live;
    FilterId next = 0;
    for (int step = 0; step < 2000; ++step) {
      const auto op = gen() % 100;
      if (op < 50 || live.empty()) {
        auto f = random_filter(family, gen, 1 + gen() % 10, 1000);
        small.insert(next, f);
        wide.insert(next, f);
        naive.insert(next, f);
        live.push_back(next++);
      } else if (op < 80) {
        const auto pos = gen() % live.size();
        small.remove(live[pos]);
        wide.remove(live[pos]);
        naive.remove(live[pos]);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(pos));
      } else {
        const auto id = live[gen() % live.size()];
        BloomFilter f(family, *naive.filter(id));
        f.add(gen() % 1000);
        small.update(id, f);
        wide.update(id, f);
        naive.update(id, f);
      }
      auto problem = small.validate();
      ASSERT_FALSE(problem.has_value()) << *problem;
      problem = wide.validate();
      ASSERT_FALSE(problem.has_value()) << *problem;
      const auto x = gen() % 1000;
      const auto expected = sorted(naive.find_matches(x));
      ASSERT_EQ(sorted(small.find_matches(x)), expected);
      ASSERT_EQ(sorted(wide.find_matches(x)), expected);
    }
  }
}

}  // namespace
}  // namespace bloofi
