#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "abduction/error.hpp"
#include "abduction/learners/knn.hpp"
#include "abduction/oracle.hpp"

using namespace abduction;
using namespace abduction::learners;

namespace {

struct Sample {
  oracle::Mat x;
  std::vector<int> y;
  LabeledDataset data;
};

Sample random_sample(std::mt19937_64& g, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<int> coord(0, 6);
  std::bernoulli_distribution label(0.5);
  Sample out;
  std::vector<double> ys;
  for (std::size_t i = 0; i < m; ++i) {
    oracle::Vec row(n);
    for (auto& v : row) {
      v = coord(g) / 2.0;
    }
    out.x.push_back(row);
    out.y.push_back(label(g) ? 1 : 0);
    ys.push_back(out.y.back());
  }
  out.data = LabeledDataset(out.x, ys, LabelKind::binary01);
  return out;
}

LabeledDataset line(std::vector<double> xs, std::vector<double> ys) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) {
    rows.push_back({x});
  }
  return LabeledDataset(rows, ys, LabelKind::binary01);
}

}  // namespace

TEST(Knn, MajorityOfNeighbors) {
  const auto s = line({0, 1, 2, 10}, {0, 0, 1, 1});
  EXPECT_EQ(knn_classify(s, std::vector<double>{1}, 3), 0);
  const auto u = line({0, 1, 2, 10}, {1, 1, 1, 0});
  EXPECT_EQ(knn_classify(u, std::vector<double>{1}, 3), 1);
}

TEST(Knn, Errors) {
  const auto s = line({0, 1}, {0, 1});
  EXPECT_THROW(knn_classify(s, std::vector<double>{0}, 0), Error);
  EXPECT_THROW(knn_classify(s, std::vector<double>{0}, 3), Error);
  EXPECT_THROW(knn_classify(s, std::vector<double>{0, 1}, 1), Error);
  EXPECT_THROW(knn_classify(LabeledDataset{}, std::vector<double>{0}, 1), Error);
}

TEST(Knn, AgreesWithBruteForce) {
  std::mt19937_64 g(51);
  for (int t = 0; t < 200; ++t) {
    const auto smp = random_sample(g, 1 + t % 40, 1 + t % 3);
    oracle::Vec x0(smp.data.features());
    for (auto& v : x0) {
      v = std::uniform_int_distribution<int>(0, 6)(g) / 2.0;
    }
    const std::size_t k = 1 + g() % smp.data.size();
    ASSERT_EQ(knn_classify(smp.data, x0, k), oracle::brute_knn(smp.x, smp.y, x0, k));
  }
}

TEST(Knn, InvariantUnderRowPermutation) {
  std::mt19937_64 g(52);
  for (int t = 0; t < 100; ++t) {
    const auto smp = random_sample(g, 2 + t % 20, 2);
    std::vector<std::size_t> order(smp.data.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), g);
    const auto shuffled = smp.data.subset(order);
    const std::vector<double> x0{1.5, 1.0};
    for (std::size_t k = 1; k <= smp.data.size(); ++k) {
      ASSERT_EQ(knn_classify(smp.data, x0, k), knn_classify(shuffled, x0, k));
    }
    ASSERT_EQ(hoeffding_knn_classify(smp.data, x0), hoeffding_knn_classify(shuffled, x0));
    ASSERT_EQ(ada_knn_classify(smp.data, x0, 0.1, 0.5), ada_knn_classify(shuffled, x0, 0.1, 0.5));
  }
}

TEST(AdaKnn, HugeConstantRefuses) {
  const auto s = line({0, 1, 2, 3}, {1, 1, 1, 1});
  const auto d = ada_knn_classify(s, std::vector<double>{0}, 0.1, 1e6);
  EXPECT_FALSE(d.label.has_value());
  EXPECT_EQ(d.k, s.size());
}

TEST(AdaKnn, UnanimousLabelsDecideAtFirstPassingK) {
  std::vector<double> xs(30);
  std::iota(xs.begin(), xs.end(), 0.0);
  const auto s = line(xs, std::vector<double>(30, 1.0));
  const auto d = ada_knn_classify(s, std::vector<double>{0}, 0.1, 0.1);
  ASSERT_TRUE(d.label.has_value());
  EXPECT_EQ(*d.label, 1);
  std::size_t first = 1;
  while (!(0.5 > ada_threshold(30, first, 0.1, 0.1))) {
    ++first;
  }
  EXPECT_EQ(d.k, first);
}

TEST(AdaKnn, ThresholdFormula) {
  EXPECT_DOUBLE_EQ(ada_threshold(10, 4, 0.1, 2.0), 2.0 * std::sqrt((std::log(10.0) + std::log(10.0)) / 4.0));
  EXPECT_THROW(ada_knn_classify(line({0}, {1}), std::vector<double>{0}, 0.0, 1.0), Error);
  EXPECT_THROW(ada_knn_classify(line({0}, {1}), std::vector<double>{0}, 0.5, -1.0), Error);
}

TEST(HoeffdingKnn, WeightValues) {
  EXPECT_EQ(hoeffding_weight(7, 0.5), 2.0);
  EXPECT_NEAR(hoeffding_weight(10, 0.8), 2.0 * std::exp(-1.8), 1e-15);
  EXPECT_NEAR(hoeffding_weight(10, 0.8), 0.330598, 1e-6);
  for (std::size_t k = 1; k < 50; ++k) {
    EXPECT_LT(hoeffding_weight(k + 1, 0.8), hoeffding_weight(k, 0.8));
  }
}

TEST(HoeffdingKnn, NeedsTwoObservations) {
  EXPECT_THROW(hoeffding_knn_classify(line({0}, {1}), std::vector<double>{0}), Error);
}

TEST(HoeffdingKnn, PrefersLargerUnanimousNeighborhood) {
  const auto s = line({0, 1, 2, 3, 20}, {1, 1, 1, 1, 0});
  const auto d = hoeffding_knn_classify(s, std::vector<double>{0});
  EXPECT_EQ(d.label, 1);
  EXPECT_EQ(d.k, 4u);
  EXPECT_DOUBLE_EQ(d.statistic, hoeffding_weight(4, 1.0));
}

TEST(Wrapper, AdaptiveLearnersMatchTheirWrapperForm) {
  std::mt19937_64 g(53);
  for (int t = 0; t < 100; ++t) {
    const auto smp = random_sample(g, 2 + t % 30, 1 + t % 2);
    const std::vector<double> x0(smp.data.features(), 1.5);
    ASSERT_EQ(ada_knn_classify(smp.data, x0, 0.1, 0.3), ada_knn_by_wrapper(smp.data, x0, 0.1, 0.3));
    ASSERT_EQ(hoeffding_knn_classify(smp.data, x0), hoeffding_knn_by_wrapper(smp.data, x0));
  }
}
