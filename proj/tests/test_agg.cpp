#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "abduction/agg.hpp"
#include "abduction/error.hpp"
#include "abduction/oracle.hpp"

using namespace abduction;
using Vec = std::vector<double>;

namespace {

std::vector<agg::AggregationSpec> shipped() {
  return {agg::l1(),           agg::l2(),           agg::l3(),           agg::percentile(0), agg::percentile(25),
          agg::percentile(50), agg::percentile(75), agg::percentile(100), agg::minimum(),    agg::maximum()};
}

Vec dyadic(std::mt19937_64& g, std::size_t m) {
  std::uniform_int_distribution<int> d(0, 32);
  Vec v(m);
  for (auto& x : v) {
    x = d(g) / 8.0;
  }
  return v;
}

}  // namespace

TEST(Aggregate, PresetValues) {
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::l1(), Vec{1, 2, 3}), 2.0);
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::l3(), Vec{1, 4}), 2.0);
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::l2(), Vec{3, 4}), std::sqrt(12.5));
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::l2_literal(), Vec{3, 4}), 2.5);
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::l2(), Vec{0}), 0.0);
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::total(), Vec{1, 2, 3}), 6.0);
}

TEST(Aggregate, PresetsAreStableOnConstants) {
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::l1(), Vec{7, 7, 7}), 7.0);
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::l3(), Vec{2, 2, 2, 2}), 2.0);
  EXPECT_TRUE(agg::is_stable(agg::l2()));
  EXPECT_FALSE(agg::is_stable(agg::l2_literal()));
  EXPECT_FALSE(agg::is_stable(agg::total()));
}

TEST(Aggregate, PercentileRule) {
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::percentile(50), Vec{1, 2, 3, 4}), 3.0);
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::percentile(50), Vec{1, 2, 3}), 1.5);
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::percentile(50), Vec{4, 1, 3, 2}), 3.0);
  // Clamped ends: r = 100 selects the largest, r = 0 the smallest.
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::percentile(100), Vec{5, 1, 3}), 5.0);
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::percentile(0), Vec{5, 1, 3}), 1.0);
  // p = 0.75 < 1 averages the clamped a_0 = a_1 with a_1.
  EXPECT_DOUBLE_EQ(agg::aggregate(agg::percentile(25), Vec{2, 6, 9}), 2.0);
}

TEST(Aggregate, MinMaxMatchExtremePercentiles) {
  std::mt19937_64 g(11);
  for (int t = 0; t < 200; ++t) {
    const auto a = dyadic(g, 1 + t % 8);
    EXPECT_EQ(agg::aggregate(agg::minimum(), a), agg::aggregate(agg::percentile(0), a));
    EXPECT_EQ(agg::aggregate(agg::maximum(), a), agg::aggregate(agg::percentile(100), a));
  }
}

TEST(Aggregate, Errors) {
  EXPECT_THROW(agg::aggregate(agg::l1(), Vec{}), Error);
  EXPECT_THROW(agg::percentile(101), Error);
  EXPECT_THROW(agg::percentile(-1), Error);
  EXPECT_THROW(agg::aggregate(agg::Percentile{150}, Vec{1}), Error);
}

TEST(SeqOrder, Examples) {
  EXPECT_TRUE(agg::seq_sim(Vec{3, 1, 2}, Vec{1, 2, 3}));
  EXPECT_FALSE(agg::seq_sim(Vec{1, 1}, Vec{1, 2}));
  EXPECT_TRUE(agg::seq_sim(Vec{}, Vec{}));
  EXPECT_TRUE(agg::seq_less(Vec{1, 2}, Vec{2, 3}, true));
  EXPECT_FALSE(agg::seq_less(Vec{1, 3}, Vec{2, 2}, true));
  EXPECT_FALSE(agg::seq_less(Vec{1, 2}, Vec{1, 2, 3}, true));
  EXPECT_TRUE(agg::seq_less(Vec{1, 2}, Vec{2, 2}, false));
  EXPECT_FALSE(agg::seq_less(Vec{1, 2}, Vec{2, 2}, true));
}

TEST(SeqOrder, AgreesWithBijectionSearchExhaustively) {
  // Every pair of sequences of length <= 3 over {0,1,2,3}.
  std::vector<Vec> all;
  for (std::size_t m = 1; m <= 3; ++m) {
    const std::size_t count = static_cast<std::size_t>(std::pow(4, m));
    for (std::size_t code = 0; code < count; ++code) {
      Vec v(m);
      auto c = code;
      for (auto& x : v) {
        x = static_cast<double>(c % 4);
        c /= 4;
      }
      all.push_back(v);
    }
  }
  for (const auto& a : all) {
    for (const auto& b : all) {
      for (bool strict : {false, true}) {
        ASSERT_EQ(agg::seq_less(a, b, strict), oracle::seq_less_bijection(a, b, strict));
      }
    }
  }
}

TEST(AggregateProperty, OrderInsensitiveOnDyadicGrid) {
  std::mt19937_64 g(21);
  for (const auto& spec : shipped()) {
    for (int t = 0; t < 300; ++t) {
      auto a = dyadic(g, 1 + t % 8);
      const double v = agg::aggregate(spec, a);
      std::shuffle(a.begin(), a.end(), g);
      ASSERT_EQ(agg::aggregate(spec, a), v) << agg::describe(spec);
    }
  }
}

TEST(AggregateProperty, FoldIsPermutationInvariant) {
  std::mt19937_64 g(22);
  for (const auto& spec : {agg::l1(), agg::l2(), agg::l3()}) {
    const auto& r = std::get<agg::Recursive>(spec);
    for (int t = 0; t < 300; ++t) {
      auto a = dyadic(g, 1 + t % 8);
      const double v = agg::fold(r, a);
      std::shuffle(a.begin(), a.end(), g);
      ASSERT_EQ(agg::fold(r, a), v);
    }
  }
}

TEST(AggregateProperty, MonotoneUnderSequenceOrder) {
  std::mt19937_64 g(23);
  std::uniform_int_distribution<int> bump(1, 8);
  for (const auto& spec : shipped()) {
    for (int t = 0; t < 300; ++t) {
      const auto a = dyadic(g, 1 + t % 8);
      Vec b = a;
      for (auto& x : b) {
        x += bump(g) / 8.0;
      }
      std::shuffle(b.begin(), b.end(), g);
      ASSERT_TRUE(agg::seq_less(a, b, true));
      ASSERT_LT(agg::aggregate(spec, a), agg::aggregate(spec, b)) << agg::describe(spec);
    }
  }
}

TEST(AggregateProperty, StableAndBounded) {
  std::mt19937_64 g(24);
  for (const auto& spec : shipped()) {
    ASSERT_TRUE(agg::is_stable(spec));
    for (int t = 0; t < 300; ++t) {
      const auto a = dyadic(g, 1 + t % 8);
      const double v = agg::aggregate(spec, a);
      const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
      ASSERT_GE(v, *lo * (1 - 1e-12));
      ASSERT_LE(v, *hi * (1 + 1e-12));
      const double c = a.front();
      ASSERT_NEAR(agg::aggregate(spec, Vec(a.size(), c)), c, 1e-12 * std::max(1.0, c));
    }
  }
}

TEST(AggregateProperty, BuildingBlocksMonotone) {
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    EXPECT_LT(agg::scale(agg::Scale::square, x), agg::scale(agg::Scale::square, x + 0.25));
    EXPECT_LT(agg::compound(agg::Compound::sum, x, 1.0), agg::compound(agg::Compound::sum, x + 0.25, 1.0));
    EXPECT_EQ(agg::compound(agg::Compound::product, x, 3.0), agg::compound(agg::Compound::product, 3.0, x));
    for (auto n : {agg::Normalize::divide_by_n, agg::Normalize::sqrt_of_quotient, agg::Normalize::nth_root}) {
      EXPECT_LT(agg::normalize(n, x + 1.0, 3), agg::normalize(n, x + 1.25, 3));
      // Antitone in the count; for the root this holds on x >= 1.
      EXPECT_GE(agg::normalize(n, x + 1.0, 2), agg::normalize(n, x + 1.0, 3));
    }
  }
}
