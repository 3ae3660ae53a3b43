#include <gtest/gtest.h>

#include <random>

#include "abduction/error.hpp"
#include "abduction/learners/naive_bayes.hpp"
#include "abduction/oracle.hpp"

using namespace abduction;
using namespace abduction::learners;

TEST(NaiveBayes, SmallExample) {
  const LabeledDataset s({{1, 1}, {1, 0}, {0, 1}}, {1, 1, 0}, LabelKind::binary01);
  EXPECT_EQ(naive_bayes_classify(s, std::vector<double>{1, 1}), 1);
  EXPECT_EQ(oracle::direct_nb({{1, 1}, {1, 0}, {0, 1}}, {1, 1, 0}, {1, 1}), 1);
}

TEST(NaiveBayes, UniformLabels) {
  const LabeledDataset zeros({{1, 1}, {1, 0}, {0, 1}}, {0, 0, 0}, LabelKind::binary01);
  EXPECT_EQ(naive_bayes_classify(zeros, std::vector<double>{1, 1}), 0);
  const LabeledDataset ones({{1, 1}, {1, 0}, {0, 1}}, {1, 1, 1}, LabelKind::binary01);
  EXPECT_EQ(naive_bayes_classify(ones, std::vector<double>{0, 0}), 1);
}

TEST(NaiveBayes, UnseenValueIsAnError) {
  const LabeledDataset s({{1, 1}, {1, 0}}, {1, 0}, LabelKind::binary01);
  try {
    naive_bayes_classify(s, std::vector<double>{2, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unseen feature value");
  }
  EXPECT_THROW(naive_bayes_classify(s, std::vector<double>{1}), Error);
}

TEST(NaiveBayes, CriterionShape) {
  const auto one = naive_bayes_criterion(1);
  EXPECT_EQ(one.rules.size(), 1u);
  EXPECT_NO_THROW(one.validate());
  const auto three = naive_bayes_criterion(3);
  EXPECT_EQ(three.rules.size(), 3u);
  EXPECT_NO_THROW(three.validate());
}

TEST(NaiveBayes, AgreesWithDirectCounting) {
  std::mt19937_64 g(71);
  int checked = 0;
  while (checked < 2000) {
    const std::size_t n = 1 + g() % 4;
    const std::size_t m = 1 + g() % 20;
    oracle::Mat x(m, oracle::Vec(n));
    std::vector<int> y(m);
    std::vector<double> yd(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (auto& v : x[i]) {
        v = static_cast<double>(g() % 3);
      }
      y[i] = static_cast<int>(g() % 2);
      yd[i] = y[i];
    }
    const oracle::Vec z = x[g() % m];
    oracle::Vec zz = z;
    zz[g() % n] = static_cast<double>(g() % 3);
    const LabeledDataset s(x, yd, LabelKind::binary01);
    for (const auto& q : {z, zz}) {
      bool seen = true;
      for (std::size_t j = 0; j < n; ++j) {
        bool any = false;
        for (const auto& row : x) {
          any = any || row[j] == q[j];
        }
        seen = seen && any;
      }
      if (!seen) {
        EXPECT_THROW(naive_bayes_classify(s, q), Error);
        continue;
      }
      ASSERT_EQ(naive_bayes_classify(s, q), oracle::direct_nb(x, y, q));
      ++checked;
    }
  }
}
