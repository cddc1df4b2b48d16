#include <gtest/gtest.h>

#include <random>

#include "pda/bounds.hpp"
#include "pda/combinatorics.hpp"
#include "pda/families.hpp"
#include "support.hpp"

using namespace pda;
namespace pt = pda::testing;

TEST(Recursive, NestedCeilingTerms) {
  const BoundReport a = recursive_bound(4, 6, 3);
  EXPECT_EQ(a.terms, (std::vector<std::int64_t>{2, 1, 1}));
  EXPECT_EQ(a.value, 4);
  const BoundReport b = recursive_bound(7, 4, 1);
  EXPECT_EQ(b.terms, (std::vector<std::int64_t>{6, 4, 2}));
  EXPECT_EQ(b.value, 12);
}

TEST(Recursive, TrivialEnds) {
  EXPECT_EQ(recursive_bound(5, 3, 3).value, 0);
  EXPECT_EQ(recursive_bound(5, 3, 3).source, BoundSource::trivial_zf);
  EXPECT_EQ(recursive_bound(5, 3, 0).value, 15);
  EXPECT_EQ(recursive_bound(5, 3, 0).source, BoundSource::trivial_z0);
}

TEST(Recursive, TelescopesToBinomial) {
  for (std::int64_t k = 1; k <= 12; ++k)
    for (std::int64_t t = 0; t < k; ++t) {
      const auto f = static_cast<std::int64_t>(binomial(k, t));
      ASSERT_EQ(recursive_bound(f, k, t).value, static_cast<std::int64_t>(binomial(k, t + 1))) << k << " " << t;
    }
}

TEST(Simple, ValuesAndClamp) {
  EXPECT_EQ(simple_bound(6, 8, 5).value, 5);
  EXPECT_EQ(simple_bound(4, 6, 3).value, 4);
  EXPECT_EQ(simple_bound(3, 3, 3).value, 0);
}

TEST(Improved, Applicability) {
  EXPECT_FALSE(improved_bound(6, 8, 5).has_value());
  ASSERT_TRUE(improved_bound(12, 12, 9).has_value());
  EXPECT_EQ(improved_bound(12, 12, 9)->value, 6);
  EXPECT_FALSE(improved_bound(4, 4, 3).has_value());  // needs Z <= F-2
  EXPECT_FALSE(improved_bound(4, 4, 0).has_value());
}

TEST(FMinus2, Values) {
  ASSERT_TRUE(f_minus_2_bound(16, 8).has_value());
  EXPECT_EQ(f_minus_2_bound(16, 8)->value, 6);
  ASSERT_TRUE(f_minus_2_bound(11, 11).has_value());
  EXPECT_EQ(f_minus_2_bound(11, 11)->value, 4);
  EXPECT_FALSE(f_minus_2_bound(12, 12).has_value());
  EXPECT_FALSE(f_minus_2_bound(100, 8).has_value());  // K > F(F-1)/2
}

TEST(Square, Values) {
  ASSERT_TRUE(square_bound(11, 8).has_value());
  EXPECT_EQ(square_bound(11, 8)->value, 6);
  EXPECT_FALSE(square_bound(15, 12).has_value());
  ASSERT_TRUE(square_bound(4, 2).has_value());
  EXPECT_EQ(square_bound(4, 2)->value, 4);
}

TEST(Square, FMinus3ApplicableIffFiveDoesNotDivideF) {
  for (std::int64_t f = 4; f <= 40; ++f) EXPECT_EQ(square_bound(f, f - 3).has_value(), f % 5 != 0) << f;
}

TEST(SubArrayRefine, Examples) {
  const Lemma1Outcome a = lemma1_refine(6, 8, 5, 5);
  EXPECT_FALSE(a.contradiction) << a.reason;
  const Lemma1Outcome b = lemma1_refine(12, 12, 9, 5);
  EXPECT_TRUE(b.contradiction) << b.reason;
  EXPECT_THROW(lemma1_refine(4, 4, 3, 2), PreconditionError);
  EXPECT_THROW(lemma1_refine(4, 4, 1, 0), PreconditionError);
}

// Whenever the improved bound applies, the simple bound's value is refuted.
TEST(SubArrayRefine, RefutesSimpleValueWhereImprovedApplies) {
  int applicable = 0;
  for (std::int64_t f = 3; f <= 16; ++f)
    for (std::int64_t z = 1; z <= f - 2; ++z)
      for (std::int64_t k = 1; k <= 40; ++k) {
        if (!improved_bound(k, f, z)) continue;
        ++applicable;
        const Lemma1Outcome o = lemma1_refine(k, f, z, simple_bound(k, f, z).value);
        EXPECT_TRUE(o.contradiction) << k << "," << f << "," << z << ": " << o.reason;
      }
  EXPECT_GT(applicable, 0);
}

TEST(Best, Examples) {
  const BoundReport a = best_lower_bound(6, 8, 5);
  EXPECT_EQ(a.value, 5);
  EXPECT_EQ(a.source, BoundSource::simple);
  for (std::int64_t f = 1; f <= 8; ++f)
    for (std::int64_t k = 1; k <= 30; ++k) {
      if (f == 1) continue;  // Z = F-1 = 0 is the trivial case there
      const BoundReport b = best_lower_bound(k, f, f - 1);
      EXPECT_EQ(b.value, ceil_div(k, f));
      EXPECT_EQ(b.source, BoundSource::recursive);
      EXPECT_EQ(b.terms.size(), 1u);
    }
  EXPECT_EQ(best_lower_bound(3, 4, 0).value, 12);
  EXPECT_EQ(best_lower_bound(3, 4, 0).source, BoundSource::trivial_z0);
  EXPECT_EQ(best_lower_bound(3, 4, 4).value, 0);
  EXPECT_EQ(best_lower_bound(12, 12, 9).value, 6);
  EXPECT_THROW(best_lower_bound(0, 4, 1), PreconditionError);
  EXPECT_THROW(best_lower_bound(3, 4, 5), PreconditionError);
}

TEST(BoundProperties, SimpleNeverExceedsRecursive) {
  for (std::int64_t f = 1; f <= 12; ++f)
    for (std::int64_t z = 1; z < f; ++z)
      for (std::int64_t k = 1; k <= 30; ++k) {
        const BoundReport r = recursive_bound(k, f, z);
        EXPECT_LE(simple_bound(k, f, z).value, r.value);
        for (std::int64_t term : r.terms) EXPECT_GE(term, 1);
        EXPECT_EQ(static_cast<std::int64_t>(r.terms.size()), f - z);
      }
}

TEST(BoundProperties, MonotoneInK) {
  for (std::int64_t f = 1; f <= 12; ++f)
    for (std::int64_t z = 0; z <= f; ++z) {
      std::int64_t prev = 0;
      for (std::int64_t k = 1; k <= 40; ++k) {
        const std::int64_t v = best_lower_bound(k, f, z).value;
        EXPECT_GE(v, prev) << k << "," << f << "," << z;
        prev = v;
      }
    }
}

TEST(BoundProperties, NeverAboveAConstruction) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const FamilySpec spec = pt::random_spec(rng, 2000);
    const Pda p = build(spec);
    EXPECT_LE(best_lower_bound(p.k(), p.f(), p.z()).value, p.s()) << spec.str();
  }
}

TEST(BoundProperties, NeverAboveAllDistinct) {
  for (std::int64_t f = 1; f <= 10; ++f)
    for (std::int64_t z = 0; z <= f; ++z)
      for (std::int64_t k = 1; k <= 20; ++k) EXPECT_LE(best_lower_bound(k, f, z).value, (f - z) * k);
}
