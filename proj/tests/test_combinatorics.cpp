#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "pda/combinatorics.hpp"

using namespace pda;

namespace {

// Every r-subset of [0,k) as a sorted list, sorted lexicographically. Built
// from bitmasks so it shares nothing with the ranking code.
std::vector<std::vector<std::int64_t>> lex_subsets(std::int64_t k, std::int64_t r) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) != r) continue;
    std::vector<std::int64_t> s;
    for (std::int64_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Binomial, MatchesPascalTriangle) {
  std::vector<std::vector<std::uint64_t>> tri(61);
  for (std::size_t n = 0; n < tri.size(); ++n) {
    tri[n].assign(n + 1, 1);
    for (std::size_t r = 1; r < n; ++r) tri[n][r] = tri[n - 1][r - 1] + tri[n - 1][r];
  }
  for (std::int64_t n = 0; n <= 60; ++n)
    for (std::int64_t r = 0; r <= n; ++r)
      ASSERT_EQ(binomial(n, r), tri[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)]) << n << " " << r;
}

TEST(Binomial, OutsideRangeIsZero) {
  EXPECT_EQ(binomial(5, -1), 0u);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_EQ(binomial(-1, 0), 0u);
}

TEST(Binomial, OverflowThrows) {
  EXPECT_NO_THROW(binomial(66, 33));
  EXPECT_THROW(binomial(70, 35), PreconditionError);
}

TEST(CeilDiv, SmallTable) {
  EXPECT_EQ(ceil_div(0, 3), 0);
  EXPECT_EQ(ceil_div(1, 3), 1);
  EXPECT_EQ(ceil_div(3, 3), 1);
  EXPECT_EQ(ceil_div(4, 3), 2);
  EXPECT_EQ(ceil_div(18, 8), 3);
}

TEST(SubsetRank, RankAndUnrankFollowLexOrder) {
  for (std::int64_t k = 0; k <= 12; ++k)
    for (std::int64_t r = 0; r <= k; ++r) {
      const SubsetRank sr(k, r);
      const auto all = lex_subsets(k, r);
      ASSERT_EQ(sr.count(), all.size());
      for (std::size_t i = 0; i < all.size(); ++i) {
        ASSERT_EQ(sr.rank(all[i]), i) << "k=" << k << " r=" << r;
        ASSERT_EQ(sr.unrank(i), all[i]);
      }
    }
}

TEST(SubsetRank, NextSubsetWalksTheSameOrder) {
  for (std::int64_t k = 1; k <= 10; ++k)
    for (std::int64_t r = 0; r <= k; ++r) {
      const auto all = lex_subsets(k, r);
      std::vector<std::int64_t> s(static_cast<std::size_t>(r));
      for (std::int64_t i = 0; i < r; ++i) s[static_cast<std::size_t>(i)] = i;
      std::size_t seen = 0;
      do {
        ASSERT_LT(seen, all.size());
        ASSERT_EQ(s, all[seen]);
        ++seen;
      } while (next_subset(s, k));
      EXPECT_EQ(seen, all.size());
    }
}

TEST(SubsetRank, RejectsMalformedSubsets) {
  const SubsetRank sr(5, 2);
  EXPECT_THROW(sr.rank(std::vector<std::int64_t>{1}), PreconditionError);
  EXPECT_THROW(sr.rank(std::vector<std::int64_t>{2, 1}), PreconditionError);
  EXPECT_THROW(sr.rank(std::vector<std::int64_t>{1, 5}), PreconditionError);
  EXPECT_THROW(sr.unrank(10), PreconditionError);
  EXPECT_THROW(SubsetRank(3, 4), PreconditionError);
}

// Property: rank(unrank(i)) = i on large ground sets, sampled.
TEST(SubsetRank, RoundTripSampled) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(1, 60)(rng);
    const std::int64_t r = std::uniform_int_distribution<std::int64_t>(0, std::min<std::int64_t>(k, 8))(rng);
    const SubsetRank sr(k, r);
    const std::uint64_t i = std::uniform_int_distribution<std::uint64_t>(0, sr.count() - 1)(rng);
    const auto s = sr.unrank(i);
    ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
    ASSERT_EQ(sr.rank(s), i);
  }
}
