#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "abduction/error.hpp"
#include "abduction/learners/linear.hpp"
#include "abduction/oracle.hpp"

using namespace abduction;
using namespace abduction::learners;

namespace {

LabeledDataset one_d(std::vector<double> xs, std::vector<double> ys, LabelKind kind) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) {
    rows.push_back({x});
  }
  return LabeledDataset(rows, ys, kind);
}

LabeledDataset random_binary(std::mt19937_64& g, std::size_t m, std::size_t n) {
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> x(m, std::vector<double>(n));
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto& v : x[i]) {
      v = nd(g);
    }
    y[i] = static_cast<double>(i % 2);
  }
  return LabeledDataset(x, y, LabelKind::binary01);
}

void expect_non_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    ASSERT_LE(v[i], v[i - 1]);
  }
}

}  // namespace

TEST(Logistic, CriterionAtZeroIsLogHalf) {
  std::mt19937_64 g(81);
  const auto s = random_binary(g, 9, 2);
  EXPECT_NEAR(logistic_criterion(std::vector<double>{0, 0, 0}, s), std::log(0.5), 1e-15);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  std::mt19937_64 g(82);
  std::normal_distribution<double> nd(0.0, 0.7);
  const auto s = random_binary(g, 15, 2);
  for (int t = 0; t < 20; ++t) {
    oracle::Vec p{nd(g), nd(g), nd(g)};
    const auto f = [&](const oracle::Vec& q) { return logistic_criterion(q, s); };
    const auto report = oracle::check_gradient(f, logistic_gradient(p, s), p);
    ASSERT_LE(report.max_relative_error, 1e-4);
  }
}

TEST(Logistic, SeparableDataImprovesSteadily) {
  const auto s = one_d({-2, -1.5, -1, 1, 1.5, 2}, {0, 0, 0, 1, 1, 1}, LabelKind::binary01);
  const auto fit = logistic_fit(s, 0.01, 50);
  ASSERT_EQ(fit.best_so_far.size(), 51u);
  for (std::size_t i = 1; i <= 10; ++i) {
    EXPECT_LT(fit.best_so_far[i], fit.best_so_far[i - 1]);
  }
  expect_non_increasing(fit.best_so_far);
  EXPECT_GT(fit.model.w[0], 0.0);
  EXPECT_EQ(fit.model.form, del::Form::logistic);
  EXPECT_DOUBLE_EQ(logistic_criterion(fit.model.params(), s), fit.best_so_far.back());
}

TEST(Logistic, CriterionMatchesExplanationCriterion) {
  std::mt19937_64 g(83);
  const auto s = random_binary(g, 10, 2);
  const LinearModel f{{0.5, -0.25}, 0.125, del::Form::logistic, {}};
  const double via_rules =
      del::criterion_value(logistic_explanation_criterion(), f.hypothesis(del::observed_points(s.rows())), s.rows());
  EXPECT_NEAR(logistic_criterion(f.params(), s), via_rules, 1e-12);
}

TEST(Svm, SlackExamples) {
  const auto s = one_d({1}, {1}, LabelKind::pm1);
  const LinearModel f{{-0.5}, 0.0, del::Form::linear, {}};
  EXPECT_DOUBLE_EQ(svm_slack_minimum(f, s, 0.0), 1.5);
  const auto wide = one_d({-2, 2}, {-1, 1}, LabelKind::pm1);
  const LinearModel g{{1}, 0.0, del::Form::linear, {}};
  EXPECT_DOUBLE_EQ(svm_slack_minimum(g, wide, 0.25), 0.25);
}

TEST(Svm, ExplanationCriterionExamples) {
  const auto s = one_d({-1, 2}, {-1, 1}, LabelKind::pm1);
  const LinearModel sep{{1}, 0.0, del::Form::linear, {}};
  ASSERT_TRUE(in_normalized_class(sep, s));
  EXPECT_DOUBLE_EQ(svm_explanation_criterion(sep, s, 0.5), 0.5);

  // Both points on the wrong side: no correctly classified observation.
  const auto t = one_d({-3, 3}, {-1, 1}, LabelKind::pm1);
  const LinearModel bad{{-0.5}, 0.5, del::Form::linear, {}};
  EXPECT_FALSE(in_normalized_class(bad, t));
  EXPECT_THROW(svm_explanation_criterion(bad, t, 0.1), Error);

  // Correct everywhere, smallest |f| is 0.5.
  const auto u = one_d({1, 0}, {-1, 1}, LabelKind::pm1);
  EXPECT_FALSE(in_normalized_class(LinearModel{{-1.5}, 1.0, del::Form::linear, {}}, u));
  const LinearModel k{{-3}, 2.0, del::Form::linear, {}};
  EXPECT_TRUE(in_normalized_class(k, u));
  EXPECT_DOUBLE_EQ(svm_explanation_criterion(k, u, 0.0), 0.0);
}

TEST(Svm, MisclassifiedPointContributesOneAndAHalf) {
  const auto t = one_d({-1, 1, -0.5}, {-1, 1, 1}, LabelKind::pm1);
  const LinearModel f{{1}, 0.0, del::Form::linear, {}};
  ASSERT_TRUE(in_normalized_class(f, t));
  EXPECT_DOUBLE_EQ(svm_explanation_criterion(f, t, 0.0), 1.5 / 3.0);
  EXPECT_DOUBLE_EQ(svm_slack_minimum(f, t, 0.0), 1.5 / 3.0);
}

TEST(Svm, CriterionEqualsSlackMinimumOnNormalizedClass) {
  std::mt19937_64 g(84);
  std::normal_distribution<double> nd;
  int checked = 0;
  while (checked < 100) {
    const std::size_t m = 2 + g() % 10;
    std::vector<std::vector<double>> x(m, std::vector<double>(2));
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = {nd(g), nd(g)};
      y[i] = i % 2 ? 1.0 : -1.0;
    }
    const LabeledDataset s(x, y, LabelKind::pm1);
    LinearModel f{{nd(g), nd(g)}, nd(g), del::Form::linear, {}};
    double q = INFINITY;
    for (std::size_t i = 0; i < m; ++i) {
      const double v = f(x[i]);
      if (v * y[i] > 0) {
        q = std::min(q, std::abs(v));
      }
    }
    if (!std::isfinite(q)) {
      continue;
    }
    for (auto& w : f.w) {
      w /= q;
    }
    f.b /= q;
    ASSERT_TRUE(in_normalized_class(f, s));
    const double alpha = 0.1 * static_cast<double>(checked % 5);
    ASSERT_NEAR(svm_explanation_criterion(f, s, alpha), svm_slack_minimum(f, s, alpha), 1e-9);
    ++checked;
  }
}

TEST(Svm, SlackMinimumMatchesGridSearch) {
  std::mt19937_64 g(85);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    oracle::Mat x(6, oracle::Vec(2));
    oracle::Vec y(6);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < 6; ++i) {
      x[i] = {nd(g), nd(g)};
      y[i] = i % 2 ? 1.0 : -1.0;
    }
    const LabeledDataset s(x, y, LabelKind::pm1);
    const oracle::Vec w{nd(g), nd(g)};
    const double b = nd(g);
    const LinearModel f{w, b, del::Form::linear, {}};
    ASSERT_NEAR(svm_slack_minimum(f, s, 0.3), oracle::slack_grid_minimum(w, b, x, y, 0.3), 1e-6);
  }
}

TEST(Svm, FitSeparatesTwoPoints) {
  const auto s = one_d({-1, 1}, {-1, 1}, LabelKind::pm1);
  const auto fit = svm_fit(s, 0.01, 0.05, 1000);
  EXPECT_TRUE(fit.rescaled);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_GT(fit.model(s.x(i)) * s.y(i), 0.0);
  }
  EXPECT_TRUE(in_normalized_class(fit.model, s));
  expect_non_increasing(fit.best_so_far);
}

TEST(Svm, RescaledFitsAreNormalized) {
  std::mt19937_64 g(86);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (int i = 0; i < 20; ++i) {
      const double label = i % 2 ? 1.0 : -1.0;
      x.push_back({nd(g) + label, nd(g)});
      y.push_back(label);
    }
    const LabeledDataset s(x, y, LabelKind::pm1);
    const auto fit = svm_fit(s, 0.01, 0.05, 300);
    ASSERT_TRUE(fit.rescaled);
    double q = INFINITY;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double v = fit.model(s.x(i));
      if (v * s.y(i) > 0) {
        q = std::min(q, std::abs(v));
      }
    }
    ASSERT_NEAR(q, 1.0, 1e-9);
    expect_non_increasing(fit.best_so_far);
  }
}

TEST(Svr, EpsilonInsensitiveLoss) {
  EXPECT_EQ(epsilon_insensitive(0.2, 0.5), 0.0);
  EXPECT_EQ(epsilon_insensitive(-0.2, 0.5), 0.0);
  EXPECT_EQ(epsilon_insensitive(1.5, 0.5), 1.0);
  EXPECT_EQ(epsilon_insensitive(-1.5, 0.5), 1.0);
}

TEST(Svr, ExactLineHasZeroObjective) {
  const auto s = one_d({0, 1, 2, 3}, {1, 3, 5, 7}, LabelKind::real);
  const LinearModel truth{{2}, 1, del::Form::linear, {}};
  EXPECT_EQ(svr_objective(truth, s, 0.1, 0.0), 0.0);
  const auto fit = svr_fit(s, 0.1, 0.0, 0.01, 3000);
  expect_non_increasing(fit.best_so_far);
  EXPECT_LT(fit.best_so_far.back(), 0.05);
}

TEST(Svr, ObjectiveIsSumPlusPenalty) {
  const auto s = one_d({0, 1}, {0, 0}, LabelKind::real);
  const LinearModel f{{2}, 0, del::Form::linear, {}};
  // Residuals 0 and -2; eps 0.5 leaves 1.5; penalty 0.25 * 4.
  EXPECT_DOUBLE_EQ(svr_objective(f, s, 0.5, 0.25), 1.5 + 1.0);
}

TEST(KernelSvr, IdentityBasisReproducesLinearFit) {
  std::mt19937_64 g(87);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 12; ++i) {
    x.push_back({nd(g), nd(g)});
    y.push_back(x.back()[0] - 2 * x.back()[1] + 0.1 * nd(g));
  }
  const LabeledDataset s(x, y, LabelKind::real);
  const auto plain = svr_fit(s, 0.1, 0.01, 0.005, 400);
  const auto kernel =
      kernel_svr_fit(s, {del::BasisFunction::power(0, 1), del::BasisFunction::power(1, 1)}, 0.1, 0.01, 0.005, 400);
  EXPECT_EQ(plain.model.w, kernel.model.w);
  EXPECT_EQ(plain.model.b, kernel.model.b);
  EXPECT_EQ(plain.best_so_far, kernel.best_so_far);
  EXPECT_EQ(kernel.model.form, del::Form::basis_linear);
  for (const auto& row : x) {
    EXPECT_DOUBLE_EQ(plain.model(row), kernel.model(row));
  }
}

TEST(KernelSvr, ParabolaBasisFitsWithinTube) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = -4; i <= 4; ++i) {
    xs.push_back(i / 2.0);
    ys.push_back(1.0 - 0.5 * xs.back() + xs.back() * xs.back());
  }
  const auto s = one_d(xs, ys, LabelKind::real);
  const std::vector<del::BasisFunction> basis{del::BasisFunction::parse("x1"), del::BasisFunction::parse("x1^2")};
  const double eps = 0.05;
  const auto fit = kernel_svr_fit(s, basis, eps, 0.0, 0.002, 20000);
  ASSERT_EQ(fit.model.w.size(), basis.size());
  EXPECT_LT(fit.best_so_far.back(), 0.05);
  const LinearModel truth{{-0.5, 1.0}, 1.0, del::Form::basis_linear, basis};
  EXPECT_EQ(svr_objective(truth, s, eps, 0.0), 0.0);
  EXPECT_THROW(kernel_svr_fit(s, {}, eps, 0.0, 0.01, 10), Error);
}

TEST(Ridge, InterpolatesExactLine) {
  const auto s = one_d({1, 2, 3}, {2, 4, 6}, LabelKind::real);
  const auto f = ridge_fit(s, 0.0);
  EXPECT_NEAR(f.w[0], 2.0, 1e-12);
  EXPECT_NEAR(f.b, 0.0, 1e-12);
}

TEST(Ridge, SingularSystemIsAnError) {
  const LabeledDataset s({{1, 2}, {2, 4}, {3, 6}}, {1, 2, 3}, LabelKind::real);
  EXPECT_THROW(ridge_fit(s, 0.0), Error);
  EXPECT_NO_THROW(ridge_fit(s, 0.5));
}

TEST(Ridge, LargerPenaltyShrinksWeights) {
  std::mt19937_64 g(88);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 30; ++i) {
    x.push_back({nd(g), nd(g), nd(g)});
    y.push_back(3 * x.back()[0] - x.back()[1] + 0.5 * x.back()[2] + nd(g));
  }
  const LabeledDataset s(x, y, LabelKind::real);
  double prev = INFINITY;
  for (double alpha : {1.0, 10.0, 100.0}) {
    const auto f = ridge_fit(s, alpha);
    double norm = 0;
    for (double w : f.w) {
      norm += w * w;
    }
    EXPECT_LT(norm, prev);
    prev = norm;
  }
}

TEST(Ridge, MatchesDescentMinimizer) {
  std::mt19937_64 g(89);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 5; ++t) {
    oracle::Mat x;
    oracle::Vec y;
    for (int i = 0; i < 15; ++i) {
      x.push_back({nd(g), nd(g)});
      y.push_back(x.back()[0] + 2 * x.back()[1] + nd(g));
    }
    const LabeledDataset s(x, y, LabelKind::real);
    const double alpha = 0.1 * (t + 1);
    const auto f = ridge_fit(s, alpha);
    const auto p = oracle::ridge_descent(x, y, alpha);
    for (std::size_t j = 0; j < 2; ++j) {
      ASSERT_NEAR(f.w[j], p[j], 1e-6);
    }
    ASSERT_NEAR(f.b, p[2], 1e-6);
    // The closed form minimizes the explanation criterion.
    LinearModel nudged = f;
    nudged.w[0] += 1e-3;
    ASSERT_LT(ridge_objective(f, s, alpha), ridge_objective(nudged, s, alpha));
  }
}
